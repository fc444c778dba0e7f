"""Scenario decorator for registering FieldConfig factories."""

from __future__ import annotations

import functools
import logging
from typing import Any, Callable

from fbgravity.algebra.tables import SignatureKind
from fbgravity.scenarios.registry import ScenarioSpec, current_scenario_registry

logger = logging.getLogger(__name__)

_declared: list[ScenarioSpec] = []


def declared_scenarios() -> list[ScenarioSpec]:
    """All scenarios declared with ``@scenario`` so far."""
    return list(_declared)


def scenario(
    name: str,
    description: str,
    signature: SignatureKind | str,
    parameters: dict[str, float] | None = None,
    analytic: bool = False,
) -> Callable:
    """Decorator to register a FieldConfig factory as a named scenario.

    Args:
        name: Scenario name used in scenario strings.
        description: One-line description, shown by ``fbgravity scenarios``.
        signature: Signature the geometry is written in.
        parameters: Parameter names with default values.
        analytic: Whether the factory provides analytic partials.

    Returns:
        Decorator function.

    Example:
        >>> @scenario(name="flat_lorentzian", description="Minkowski space", signature="lorentzian", analytic=True)
        >>> def flat_lorentzian() -> FieldConfig:
        >>>     ...
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            return func(*args, **kwargs)

        spec = ScenarioSpec(
            name=name,
            description=description,
            signature=SignatureKind(signature),
            parameters=dict(parameters or {}),
            analytic=analytic,
            factory=wrapper,
        )
        wrapper._scenario_spec = spec  # type: ignore[attr-defined]
        _declared.append(spec)

        registry = current_scenario_registry()
        if registry is not None:
            registry.register(spec)
        logger.debug(f"Decorated factory '{func.__name__}' registered as scenario '{name}'")
        return wrapper

    return decorator
