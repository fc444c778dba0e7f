"""Logger utilities for fbgravity."""

import logging

ROOT_LOGGER = "fbgravity"


def get_logger(name: str, logger_name: str = ROOT_LOGGER) -> logging.Logger:
    """Get a logger below the package root logger.

    Args:
        name: Logger name (typically __name__ of the calling module).
        logger_name: Root logger name (default: "fbgravity").

    Returns:
        Logger instance.

    Example:
        >>> from fbgravity.shared.logging import get_logger
        >>> logger = get_logger("fbgravity.verification")
        >>> logger.name
        'fbgravity.verification'
    """
    if logger_name == "root":
        full_name = name
    elif name and (name == logger_name or name.startswith(f"{logger_name}.")):
        full_name = name
    elif name:
        full_name = f"{logger_name}.{name}"
    else:
        full_name = logger_name
    return logging.getLogger(full_name)
