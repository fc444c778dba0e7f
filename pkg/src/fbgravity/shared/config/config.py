"""Configuration loading and validation for fbgravity."""

from collections.abc import Mapping
import logging
import os
from pathlib import Path
import tomllib
from typing import Any

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "fbgravity.toml"
ENV_PREFIX = "FBG_"


class ConfigError(Exception):
    """Raised when configuration validation fails."""

    pass


def load_config(config_path: str | Path | None = None) -> dict[str, Any]:
    """Load configuration from TOML file.

    Args:
        config_path: Path to configuration file. Defaults to fbgravity.toml.

    Returns:
        Configuration dictionary.

    Raises:
        ConfigError: If configuration file cannot be loaded or is invalid.
    """
    if config_path is None:
        config_path = Path(DEFAULT_CONFIG_PATH)
    else:
        config_path = Path(config_path)

    if not config_path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")

    try:
        with config_path.open("rb") as f:
            config = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Invalid TOML syntax in {config_path}: {e}") from e
    except Exception as e:
        raise ConfigError(f"Error reading configuration file {config_path}: {e}") from e

    # an empty TOML file parses to an empty dict
    if not config:
        raise ConfigError(f"Configuration file is empty: {config_path}")

    return config


def _parse_env_value(raw: str) -> Any:
    try:
        return tomllib.loads(f"value = {raw}")["value"]
    except tomllib.TOMLDecodeError:
        return raw


def apply_env_overrides(config: dict[str, Any], environ: Mapping[str, str] | None = None) -> dict[str, Any]:
    """Overlay ``FBG_<KEY>`` and ``FBG_<TABLE>__<KEY>`` environment variables.

    Values are parsed as TOML literals (``1e-4``, ``true``, ``[1, 2]``) and fall back
    to plain strings.

    Args:
        config: Configuration dictionary; left untouched.
        environ: Environment mapping. Defaults to os.environ.

    Returns:
        A new configuration dictionary.
    """
    environ = os.environ if environ is None else environ
    merged: dict[str, Any] = {key: dict(value) if isinstance(value, dict) else value for key, value in config.items()}
    for name, raw in sorted(environ.items()):
        if not name.startswith(ENV_PREFIX) or len(name) == len(ENV_PREFIX):
            continue
        path = name[len(ENV_PREFIX) :].lower().split("__")
        target = merged
        for part in path[:-1]:
            existing = target.get(part)
            if not isinstance(existing, dict):
                existing = {}
                target[part] = existing
            target = existing
        target[path[-1]] = _parse_env_value(raw)
        logger.debug(f"Configuration override from {name}")
    return merged


def validate_config(config: dict[str, Any]):
    """Validate configuration using Pydantic models.

    Args:
        config: Configuration dictionary to validate.

    Returns:
        The validated RunConfig.

    Raises:
        ConfigError: If validation fails.
    """
    from fbgravity.shared.config.models import RunConfig

    try:
        return RunConfig.from_dict(config)
    except Exception as e:
        raise ConfigError(f"Configuration validation failed: {e}") from e


def get_example_config() -> str:
    """Generate example configuration file content.

    Returns:
        Example configuration as TOML string.
    """
    return """# fbgravity run configuration
scenario = "schwarzschild:M=1.0"
signature = "lorentzian"
points = 20
seed = 0
workers = 1
fiber_radius = 0.5

[diff]
# analytic uses the partials shipped with the scenario
mode = "finite_difference"
step = 1e-4
order = 4
richardson = false
# refine_above = 1e-8

[tolerances]
default = 1e-6

[tolerances.families]
# EL_ab = 1e-8

[momentum]
# zero | linear_fiber [s] | polynomial [scale, seed]
profile = "zero"
coefficients = []

[sampling]
# box = [[-1.0, 3.0, 0.4, 0.0], [1.0, 10.0, 2.7, 6.28]]

[logging]
level = "INFO"
format = "text"
"""
