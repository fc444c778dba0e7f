"""Unit tests for the fibration and equivariance diagnostics."""

import numpy as np
import pytest

from fbgravity.algebra import build_algebra
from fbgravity.exceptions import NormalizationError
from fbgravity.forms import ChartPoint, DiffConfig, DiffMode
from fbgravity.frobenius import (
    CoframeField,
    check_fibration_hypotheses,
    coframe_row,
    corrupted_field,
    equivariance_equivalence_check,
    lifted_field,
    maurer_cartan_row,
    normalization_deviation,
)
from fbgravity.scenarios import get_scenario_registry

ANALYTIC = DiffConfig(DiffMode.ANALYTIC)
POINT = ChartPoint(np.array([0.2, 4.5, 1.1, 0.7]), np.array([0.1, -0.05, 0.08, 0.12, -0.1, 0.04]))


@pytest.fixture
def tables():
    return build_algebra("lorentzian")


@pytest.fixture
def lifted(tables) -> CoframeField:
    return lifted_field(get_scenario_registry().build("schwarzschild:M=1.0"), tables)


@pytest.mark.parametrize("diff,tolerance", [(ANALYTIC, 1e-9), (DiffConfig(), 1e-6)], ids=["analytic", "fd"])
def test_lifted_field_satisfies_hypotheses(tables, lifted, diff, tolerance) -> None:
    """Test full rank, horizontality and Pfaffian closure for a lifted field."""
    diagnostics = check_fibration_hypotheses(tables, lifted, POINT, diff)
    assert not diagnostics.rank_deficient
    assert diagnostics.max_residual() < tolerance


def test_corrupted_alpha_breaks_horizontality(tables, lifted) -> None:
    """Test that mixing a fiber form into alpha^0 is detected."""
    field = corrupted_field(lifted, 0, maurer_cartan_row(tables, 0), amplitude=0.1, coordinate=1)
    diagnostics = check_fibration_hypotheses(tables, field, POINT, DiffConfig())
    assert diagnostics.horizontal_alpha > 1e-3
    assert diagnostics.max_residual() > 1e-3


def test_rank_deficient_field(tables, lifted) -> None:
    """Test that a degenerate coframe reports its rank and no residuals."""

    def matrix(z: np.ndarray) -> np.ndarray:
        out = lifted.at(z).copy()
        out[3] = out[2]
        return out

    diagnostics = check_fibration_hypotheses(tables, CoframeField("degenerate", matrix), POINT, ANALYTIC)
    assert diagnostics.rank_deficient
    assert diagnostics.rank == 9
    assert diagnostics.horizontal_alpha is None
    assert diagnostics.max_residual() == float("inf")


def test_lifted_field_is_normalized(tables, lifted) -> None:
    """Test rho_i _| eta = u_i for the lifted coframe."""
    assert normalization_deviation(tables, lifted, POINT.z) < 1e-12


def test_equivariance_of_lifted_field(tables, lifted) -> None:
    """Test that both forms of the equivariance condition vanish for a lifted field."""
    residuals = equivariance_equivalence_check(tables, lifted, POINT, ANALYTIC)
    assert residuals.lie < 1e-6
    assert residuals.curvature < 1e-9
    assert residuals.difference < 1e-6


def test_lie_and_curvature_forms_agree_off_equivariance(tables, lifted) -> None:
    """Test that the two forms agree for a normalized but non-equivariant coframe."""
    field = corrupted_field(lifted, 0, coframe_row(lifted, 1), amplitude=0.1, coordinate=0)
    residuals = equivariance_equivalence_check(tables, field, POINT, DiffConfig())
    assert residuals.curvature > 1e-4
    assert residuals.difference < 1e-6


def test_normalization_violation_raises(tables, lifted) -> None:
    """Test that a fiber-direction corruption of omega raises NormalizationError."""
    field = corrupted_field(lifted, 4, maurer_cartan_row(tables, 1), amplitude=0.1, coordinate=0)
    with pytest.raises(NormalizationError) as excinfo:
        equivariance_equivalence_check(tables, field, POINT, DiffConfig())
    assert excinfo.value.deviation > 1e-3
