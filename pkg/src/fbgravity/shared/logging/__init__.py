"""Logging setup for the fbgravity logger tree.

Diagnostics go to stderr so that reports written to stdout stay machine-readable.

Example usage:
    from fbgravity.shared.logging import setup_logging, get_logger

    setup_logging(level="DEBUG", format="json")
    logger = get_logger(__name__)
    logger.info("Sweep started")
"""

from fbgravity.shared.logging.config import (
    JSONFormatter,
    LogFormat,
    LoggingConfig,
    TextFormatter,
    setup_logging,
)
from fbgravity.shared.logging.logger import get_logger

__all__ = [
    "JSONFormatter",
    "LogFormat",
    "LoggingConfig",
    "TextFormatter",
    "get_logger",
    "setup_logging",
]
