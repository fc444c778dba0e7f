"""Shared kernel - config, logging and observability."""

from fbgravity.shared.logging import (
    LogFormat,
    LoggingConfig,
    get_logger,
    setup_logging,
)

__all__ = [
    "LogFormat",
    "LoggingConfig",
    "get_logger",
    "setup_logging",
]
