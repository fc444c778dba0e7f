"""Named background geometries and chart-point sampling."""

from fbgravity.scenarios.decorators import declared_scenarios, scenario
from fbgravity.scenarios.registry import (
    ScenarioRegistry,
    ScenarioSpec,
    get_scenario_registry,
    parse_scenario_string,
    reset_scenario_registry,
)
from fbgravity.scenarios.sampling import sample_fiber, sample_points

__all__ = [
    "ScenarioRegistry",
    "ScenarioSpec",
    "declared_scenarios",
    "get_scenario_registry",
    "parse_scenario_string",
    "reset_scenario_registry",
    "sample_fiber",
    "sample_points",
    "scenario",
]
