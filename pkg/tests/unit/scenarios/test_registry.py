"""Unit tests for the scenario registry, catalog and sampling."""

import numpy as np
import pytest

from fbgravity.algebra import SignatureKind, build_algebra
from fbgravity.exceptions import DomainError, ScenarioNotFoundError, ScenarioParameterError
from fbgravity.scenarios import (
    ScenarioRegistry,
    ScenarioSpec,
    get_scenario_registry,
    parse_scenario_string,
    sample_fiber,
    sample_points,
)


def test_catalog_contains_required_scenarios() -> None:
    """Test that the built-in catalog lists the required backgrounds."""
    names = {spec.name for spec in get_scenario_registry().list_scenarios()}
    assert {"flat_lorentzian", "flat_euclidean", "schwarzschild", "sphere_s4"} <= names


def test_scenario_metadata() -> None:
    """Test documented parameters, signatures and analytic flags."""
    registry = get_scenario_registry()
    schwarzschild = registry.get("schwarzschild")
    assert schwarzschild.parameters == {"M": 1.0}
    assert schwarzschild.signature is SignatureKind.LORENTZIAN
    assert registry.get("sphere_s4").signature is SignatureKind.EUCLIDEAN
    assert all(isinstance(spec.analytic, bool) for spec in registry.list_scenarios())


def test_build_with_parameters() -> None:
    """Test that scenario strings carry parameters into the FieldConfig."""
    cfg = get_scenario_registry().build("schwarzschild:M=2")
    assert cfg.name == "schwarzschild:M=2"
    assert np.isclose(cfg.e(np.array([0.0, 8.0, 1.0, 0.0]))[0, 0], np.sqrt(0.5))


def test_unknown_scenario() -> None:
    """Test that an unknown scenario raises ScenarioNotFoundError listing the available ones."""
    with pytest.raises(ScenarioNotFoundError, match="Available scenarios"):
        get_scenario_registry().build("kerr:a=0.5")


def test_unknown_parameter() -> None:
    """Test that unknown parameters are rejected."""
    with pytest.raises(ScenarioParameterError, match="Unknown parameter"):
        get_scenario_registry().build("schwarzschild:Q=1")


@pytest.mark.parametrize("text", ["schwarzschild:M", "schwarzschild:M=heavy", ":M=1"])
def test_malformed_scenario_strings(text: str) -> None:
    """Test malformed scenario strings."""
    with pytest.raises(ScenarioParameterError):
        parse_scenario_string(text)


def test_parse_scenario_string() -> None:
    """Test splitting of name and float parameters."""
    assert parse_scenario_string("sphere_s4:r = 2.5") == ("sphere_s4", {"r": 2.5})
    assert parse_scenario_string("flat_lorentzian") == ("flat_lorentzian", {})


def test_local_registry_replaces_duplicates() -> None:
    """Test that registering a name twice keeps the latest spec."""
    registry = ScenarioRegistry()
    first = ScenarioSpec("demo", "first", SignatureKind.EUCLIDEAN)
    second = ScenarioSpec("demo", "second", SignatureKind.EUCLIDEAN)
    registry.register(first)
    registry.register(second)
    assert registry.get("demo").description == "second"
    assert registry.has("demo") and not registry.has("other")


def test_sampling_is_seed_reproducible() -> None:
    """Test that identical seeds give bitwise-identical points."""
    cfg = get_scenario_registry().build("schwarzschild:M=1.0")
    tables = build_algebra(cfg.signature)
    first = sample_points(cfg, tables, np.random.default_rng(42), 5)
    second = sample_points(cfg, tables, np.random.default_rng(42), 5)
    assert all(np.array_equal(a.z, b.z) for a, b in zip(first, second, strict=True))


def test_sampled_points_respect_domain_and_chart() -> None:
    """Test that Schwarzschild samples stay outside r = 2M and inside the fiber chart."""
    cfg = get_scenario_registry().build("schwarzschild:M=1.0")
    tables = build_algebra(cfg.signature)
    for point in sample_points(cfg, tables, np.random.default_rng(0), 20, fiber_radius=0.5):
        assert point.x[1] > 2.0
        assert np.linalg.norm(point.y) <= 0.5
        point.validate(tables)


def test_unsampleable_box() -> None:
    """Test that a box inside the horizon raises DomainError."""
    cfg = get_scenario_registry().build("schwarzschild:M=1.0")
    box = np.array([[0.0, 0.5, 1.0, 0.0], [1.0, 1.5, 2.0, 1.0]])
    with pytest.raises(DomainError):
        sample_points(cfg, build_algebra(cfg.signature), np.random.default_rng(0), 1, box=box, max_attempts=50)


def test_sample_fiber_radius() -> None:
    """Test that fiber draws stay within the requested ball."""
    tables = build_algebra(SignatureKind.LORENTZIAN)
    rng = np.random.default_rng(1)
    assert all(np.linalg.norm(sample_fiber(tables, rng, 0.3)) <= 0.3 for _ in range(50))
