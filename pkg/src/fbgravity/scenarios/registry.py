"""Scenario registry for named background geometries."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import threading
from typing import Callable

from fbgravity.algebra.tables import SignatureKind
from fbgravity.exceptions import ScenarioNotFoundError, ScenarioParameterError
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioSpec:
    """A registered scenario factory and its metadata.

    Attributes:
        name: Scenario name (the part before ``:`` in a scenario string).
        description: One-line description.
        signature: Signature the scenario is written in.
        parameters: Parameter names mapped to their default values.
        analytic: Whether the factory ships analytic partials.
        factory: Callable building a FieldConfig from keyword parameters.
    """

    name: str
    description: str
    signature: SignatureKind
    parameters: dict[str, float] = field(default_factory=dict)
    analytic: bool = False
    factory: Callable[..., FieldConfig] | None = None

    def build(self, **params: float) -> FieldConfig:
        unknown = sorted(set(params) - set(self.parameters))
        if unknown:
            raise ScenarioParameterError(
                f"Unknown parameter(s) {unknown} for scenario '{self.name}'. Known parameters: {sorted(self.parameters)}"
            )
        merged = {**self.parameters, **params}
        return self.factory(**merged)  # type: ignore[misc]


class ScenarioRegistry:
    """Registry of scenario factories.

    Factories register themselves with the ``@scenario`` decorator; lookups
    and registrations are serialized by a lock.
    """

    def __init__(self):
        self._scenarios: dict[str, ScenarioSpec] = {}
        self._lock = threading.Lock()

    def register(self, spec: ScenarioSpec) -> None:
        with self._lock:
            if spec.name in self._scenarios:
                logger.debug(f"Replacing scenario '{spec.name}'")
            self._scenarios[spec.name] = spec
            logger.debug(f"Registered scenario '{spec.name}' (total: {len(self._scenarios)})")

    def get(self, name: str) -> ScenarioSpec:
        """Get a scenario by name.

        Raises:
            ScenarioNotFoundError: If the scenario is not registered.
        """
        with self._lock:
            if name not in self._scenarios:
                available = sorted(self._scenarios)
                raise ScenarioNotFoundError(f"Scenario '{name}' not found. Available scenarios: {available}")
            return self._scenarios[name]

    def has(self, name: str) -> bool:
        with self._lock:
            return name in self._scenarios

    def list_scenarios(self) -> list[ScenarioSpec]:
        with self._lock:
            return [self._scenarios[name] for name in sorted(self._scenarios)]

    def build(self, scenario: str) -> FieldConfig:
        """Build a FieldConfig from a scenario string such as ``schwarzschild:M=1.0``.

        Raises:
            ScenarioNotFoundError: If the scenario is not registered.
            ScenarioParameterError: If parameters are malformed or unknown.
        """
        name, params = parse_scenario_string(scenario)
        return self.get(name).build(**params)


def parse_scenario_string(scenario: str) -> tuple[str, dict[str, float]]:
    """Split ``name:k=v,k2=v2`` into the name and float parameters.

    Raises:
        ScenarioParameterError: On malformed parameters.
    """
    name, _, rest = scenario.strip().partition(":")
    if not name:
        raise ScenarioParameterError(f"Empty scenario name in '{scenario}'")
    params: dict[str, float] = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ScenarioParameterError(f"Malformed scenario parameter '{item}' in '{scenario}' (expected key=value)")
        try:
            params[key.strip()] = float(value)
        except ValueError as e:
            raise ScenarioParameterError(f"Scenario parameter '{key.strip()}' must be a number, got '{value.strip()}'") from e
    return name, params


# Global registry instance
_global_registry: ScenarioRegistry | None = None
_registry_lock = threading.Lock()


def get_scenario_registry() -> ScenarioRegistry:
    """Get or create the global scenario registry, loading the built-in catalog."""
    global _global_registry
    with _registry_lock:
        fresh = _global_registry is None
        if fresh:
            _global_registry = ScenarioRegistry()
        registry = _global_registry
    if fresh:
        from fbgravity.scenarios import catalog  # noqa: F401  (registers built-in scenarios)
        from fbgravity.scenarios.decorators import declared_scenarios

        for spec in declared_scenarios():
            registry.register(spec)
    return registry


def current_scenario_registry() -> ScenarioRegistry | None:
    """The global registry if it has been created, else None."""
    with _registry_lock:
        return _global_registry


def reset_scenario_registry() -> None:
    """Reset the global scenario registry (useful for testing)."""
    global _global_registry
    with _registry_lock:
        _global_registry = None
