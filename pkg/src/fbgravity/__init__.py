# fbgravity - numerical verification of the frame-bundle formulation of Einstein-Cartan gravity

__version__ = "0.1.0"

from fbgravity.exceptions import FBGravityError
from fbgravity.shared.logging import (
    LogFormat,
    LoggingConfig,
    get_logger,
    setup_logging,
)

__all__ = [
    "FBGravityError",
    "LogFormat",
    "LoggingConfig",
    "get_logger",
    "setup_logging",
]
