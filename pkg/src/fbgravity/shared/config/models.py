"""Pydantic models for configuration validation."""

from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from fbgravity.forms.derivative import DiffConfig, DiffMode
from fbgravity.geometry.fields import FieldConfig

ANALYTIC_TOLERANCE = 1e-10
FD_TOLERANCE = 1e-6
MAX_SEED = 2**64

VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class DiffSettings(BaseModel):
    """Derivative settings."""

    mode: DiffMode = Field(DiffMode.FINITE_DIFFERENCE, description="analytic or finite_difference")
    step: float = Field(1e-4, gt=0, description="Relative FD step")
    order: int = Field(4, description="Central-difference order")
    richardson: bool = Field(False, description="Always apply one Richardson refinement step")
    refine_above: float | None = Field(None, gt=0, description="Refine only where the h and h/2 estimates differ by more than this")

    @field_validator("order")
    @classmethod
    def validate_order(cls, v: int) -> int:
        """Validate FD order."""
        if v not in (2, 4):
            raise ValueError("FD order must be 2 or 4")
        return v

    def to_diff_config(self) -> DiffConfig:
        return DiffConfig(self.mode, self.step, self.order, self.richardson, self.refine_above)


class ToleranceSettings(BaseModel):
    """Residual tolerances, with per-family overrides."""

    default: float | None = Field(None, gt=0, description="Tolerance for families without an override")
    families: dict[str, float] = Field(default_factory=dict, description="Per-family tolerances")

    @field_validator("families")
    @classmethod
    def validate_families(cls, v: dict[str, float]) -> dict[str, float]:
        """Validate per-family tolerances."""
        for family, tolerance in v.items():
            if not tolerance > 0:
                raise ValueError(f"Tolerance for '{family}' must be positive, got {tolerance}")
        return v

    def for_family(self, family: str, analytic: bool) -> float:
        if family in self.families:
            return self.families[family]
        if self.default is not None:
            return self.default
        return ANALYTIC_TOLERANCE if analytic else FD_TOLERANCE


class MomentumSettings(BaseModel):
    """Momentum profile: ``zero``, ``linear_fiber`` [s] or ``polynomial`` [scale, seed]."""

    profile: Literal["zero", "linear_fiber", "polynomial"] = Field("zero", description="Named profile")
    coefficients: list[float] = Field(default_factory=list, description="Profile coefficients")


class SamplingSettings(BaseModel):
    """Sampling box override in x."""

    box: list[list[float]] | None = Field(None, description="Lower and upper corners, shape 2x4")

    @field_validator("box")
    @classmethod
    def validate_box(cls, v: list[list[float]] | None) -> list[list[float]] | None:
        """Validate box shape and ordering."""
        if v is None:
            return v
        if len(v) != 2 or any(len(corner) != 4 for corner in v):
            raise ValueError("Sampling box must have shape 2x4")
        if any(lo > hi for lo, hi in zip(v[0], v[1], strict=True)):
            raise ValueError("Sampling box lower corner must not exceed the upper corner")
        return v


class LoggingSettings(BaseModel):
    """Logging configuration."""

    level: str = Field("INFO", description="Log level")
    format: Literal["text", "json"] = Field("text", description="Log format")

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Validate log level."""
        if v.upper() not in VALID_LOG_LEVELS:
            raise ValueError(f"Log level must be one of {list(VALID_LOG_LEVELS)}")
        return v.upper()


class RunConfig(BaseModel):
    """Complete run configuration."""

    scenario: str = Field("flat_lorentzian", description="Scenario string, e.g. schwarzschild:M=1.0")
    signature: str | None = Field(None, description="Expected signature of the scenario")
    points: int = Field(10, ge=1, description="Number of sampled chart points")
    seed: int = Field(0, ge=0, lt=MAX_SEED, description="Sampling seed")
    workers: int = Field(1, ge=1, description="Worker threads of the point sweep")
    fiber_radius: float = Field(0.5, gt=0, le=0.5, description="Radius of the y-ball")
    output: str | None = Field(None, description="Report path; stdout when omitted")
    diff: DiffSettings = Field(default_factory=DiffSettings)
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    momentum: MomentumSettings = Field(default_factory=MomentumSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @model_validator(mode="after")
    def validate_scenario(self) -> "RunConfig":
        """Ensure the scenario exists and matches the requested signature."""
        from fbgravity.scenarios.registry import get_scenario_registry, parse_scenario_string

        name, params = parse_scenario_string(self.scenario)
        spec = get_scenario_registry().get(name)
        unknown = sorted(set(params) - set(spec.parameters))
        if unknown:
            raise ValueError(f"Unknown parameter(s) {unknown} for scenario '{name}'")
        if self.signature is not None and self.signature != spec.signature.value:
            raise ValueError(
                f"Signature '{self.signature}' does not match scenario '{name}' ({spec.signature.value})"
            )
        return self

    @property
    def analytic(self) -> bool:
        return self.diff.mode is DiffMode.ANALYTIC

    def tolerance(self, family: str) -> float:
        return self.tolerances.for_family(family, self.analytic)

    def build_scenario(self) -> FieldConfig:
        from fbgravity.scenarios.registry import get_scenario_registry

        return get_scenario_registry().build(self.scenario)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Create from dictionary.

        Args:
            data: Configuration dictionary.

        Returns:
            RunConfig instance.
        """
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return self.model_dump(mode="json", exclude_none=True)
