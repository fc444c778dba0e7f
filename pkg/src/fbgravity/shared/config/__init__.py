"""Configuration loading and validation."""

from fbgravity.shared.config.config import (
    DEFAULT_CONFIG_PATH,
    ENV_PREFIX,
    ConfigError,
    apply_env_overrides,
    get_example_config,
    load_config,
    validate_config,
)
from fbgravity.shared.config.models import (
    DiffSettings,
    LoggingSettings,
    MomentumSettings,
    RunConfig,
    SamplingSettings,
    ToleranceSettings,
)

__all__ = [
    "DEFAULT_CONFIG_PATH",
    "ENV_PREFIX",
    "ConfigError",
    "DiffSettings",
    "LoggingSettings",
    "MomentumSettings",
    "RunConfig",
    "SamplingSettings",
    "ToleranceSettings",
    "apply_env_overrides",
    "get_example_config",
    "load_config",
    "validate_config",
]
