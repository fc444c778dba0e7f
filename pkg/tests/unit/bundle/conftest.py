"""Shared fixtures for the bundle tests."""

import numpy as np
import pytest

from fbgravity.algebra import build_algebra
from fbgravity.forms import ChartPoint
from fbgravity.geometry import FieldConfig
from fbgravity.scenarios import get_scenario_registry


@pytest.fixture
def schwarzschild() -> FieldConfig:
    return get_scenario_registry().build("schwarzschild:M=1.0")


@pytest.fixture
def flat() -> FieldConfig:
    return get_scenario_registry().build("flat_lorentzian")


@pytest.fixture
def sphere() -> FieldConfig:
    return get_scenario_registry().build("sphere_s4:r=1.0")


@pytest.fixture
def lorentzian():
    return build_algebra("lorentzian")


@pytest.fixture
def euclidean():
    return build_algebra("euclidean")


@pytest.fixture
def bundle_point() -> ChartPoint:
    return ChartPoint(np.array([0.2, 4.5, 1.1, 0.7]), np.array([0.1, -0.05, 0.08, 0.12, -0.1, 0.04]))
