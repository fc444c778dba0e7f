"""Unit tests for the HVDW residual families, the theta density and the Legendre map."""

import numpy as np
import pytest

from fbgravity.bundle import (
    RESIDUAL_FAMILIES,
    MomentumField,
    evaluate_point,
    hvdw_residuals,
    legendre_constraint_heads,
    legendre_W,
    theta_density,
    torsion_equation_pair,
)
from fbgravity.forms import ChartPoint, DiffConfig, DiffMode
from fbgravity.scenarios import sample_fiber

ANALYTIC = DiffConfig(DiffMode.ANALYTIC)


def test_residual_families_are_complete(flat, lorentzian, bundle_point) -> None:
    """Test that every family is reported and finite."""
    residuals = hvdw_residuals(flat, lorentzian, MomentumField.zero(), ChartPoint(np.zeros(4), bundle_point.y), ANALYTIC)
    assert set(residuals.max_abs()) == set(RESIDUAL_FAMILIES)
    assert residuals.all_finite()


def test_flat_vacuum_solves_equations(flat, lorentzian, bundle_point) -> None:
    """Test that flat space with vanishing free momentum passes every family."""
    point = ChartPoint(np.array([0.3, -0.2, 0.5, 0.1]), bundle_point.y)
    for family, value in hvdw_residuals(flat, lorentzian, MomentumField.zero(), point, ANALYTIC).max_abs().items():
        assert value < 1e-10, f"{family}: {value}"


@pytest.mark.parametrize("diff,tolerance", [(ANALYTIC, 1e-8), (DiffConfig(), 1e-6)], ids=["analytic", "fd"])
def test_schwarzschild_vacuum_solves_equations(schwarzschild, lorentzian, bundle_point, diff, tolerance) -> None:
    """Test that the Schwarzschild pair with vanishing free momentum passes every family."""
    for family, value in hvdw_residuals(schwarzschild, lorentzian, MomentumField.zero(), bundle_point, diff).max_abs().items():
        assert value < tolerance, f"{family}: {value}"


def test_fiber_dependent_momentum_is_detected(flat, lorentzian, bundle_point) -> None:
    """Test that p_a^{ck} = s delta^c_a y^k on flat space violates the equations."""
    point = ChartPoint(np.zeros(4), bundle_point.y)
    values = hvdw_residuals(flat, lorentzian, MomentumField.linear_fiber(1.0), point, ANALYTIC).max_abs()
    assert max(values.values()) > 1e-3
    assert values["constraint"] < 1e-9


def test_torsion_equation_forms_agree(lorentzian) -> None:
    """Test that P solving the raw torsion equation also zeroes the solved form."""
    rng = np.random.default_rng(3)
    T = rng.normal(size=(4, 4, 4))
    T = T - np.swapaxes(T, 1, 2)
    raw_without_p, _ = torsion_equation_pair(T, np.zeros((4, 4, 4)), lorentzian.h)
    raw, solved = torsion_equation_pair(T, -raw_without_p, lorentzian.h)
    assert np.max(np.abs(raw)) < 1e-12
    assert np.max(np.abs(solved)) < 1e-12


def test_torsion_equation_detects_torsion(lorentzian) -> None:
    """Test that torsion without a matching P leaves both forms nonzero."""
    T = np.zeros((4, 4, 4))
    T[0, 1, 2], T[0, 2, 1] = 1.0, -1.0
    raw, solved = torsion_equation_pair(T, np.zeros((4, 4, 4)), lorentzian.h)
    assert np.max(np.abs(raw)) > 0.5
    assert np.max(np.abs(solved)) > 0.5


def test_sphere_theta_density(sphere, euclidean) -> None:
    """Test that the density on the unit four-sphere equals the scalar curvature 12."""
    point = ChartPoint(np.array([0.1, 0.2, -0.1, 0.0]), np.array([0.1, -0.2, 0.05, 0.1, 0.0, 0.15]))
    theta = theta_density(sphere, euclidean, MomentumField.zero(), point, ANALYTIC)
    assert theta.value == pytest.approx(12.0, abs=1e-8)
    assert theta.literal == pytest.approx(theta.value, abs=1e-8)
    assert theta.off_block == pytest.approx(0.0, abs=1e-8)


def test_sphere_theta_density_is_fiber_independent(sphere, euclidean) -> None:
    """Test that the density over one base point does not depend on the fiber point."""
    rng = np.random.default_rng(12)
    x = np.array([0.1, 0.2, -0.1, 0.0])
    values = np.array(
        [theta_density(sphere, euclidean, MomentumField.zero(), ChartPoint(x, sample_fiber(euclidean, rng, 0.5)), ANALYTIC).value for _ in range(20)]
    )
    assert np.max(np.abs(values - 12.0)) < 1e-8
    assert np.ptp(values) < 1e-8


def test_theta_density_off_block_is_free_momentum(schwarzschild, lorentzian, bundle_point) -> None:
    """Test that free components do not change the density of a horizontal lift."""
    mom = MomentumField.polynomial(np.random.default_rng(8))
    theta = theta_density(schwarzschild, lorentzian, mom, bundle_point, ANALYTIC)
    assert theta.literal == pytest.approx(theta.value, abs=1e-8)
    assert theta.off_block == pytest.approx(0.0, abs=1e-8)


def test_evaluation_exposes_varpi(schwarzschild, lorentzian, bundle_point) -> None:
    """Test that the point evaluation carries the lift and varpi of the same point."""
    evaluation = evaluate_point(schwarzschild, lorentzian, MomentumField.zero(), bundle_point, ANALYTIC)
    assert np.array_equal(evaluation.lifted.point.z, bundle_point.z)
    assert np.allclose(evaluation.varpi.head, np.moveaxis(lorentzian.kappa, -1, 0), atol=1e-9)


def test_legendre_stationary_on_constraint_surface(lorentzian) -> None:
    """Test that W is independent of A^A_{cd} exactly on the constraint surface."""
    rng = np.random.default_rng(0)
    A = rng.normal(size=(10, 4, 4))
    A = A - np.swapaxes(A, 1, 2)
    value = legendre_W(lorentzian, 0.7, A, legendre_constraint_heads(lorentzian))
    assert value.stationarity_residual < 1e-12
    assert value.W == pytest.approx(0.7, abs=1e-12)


def test_legendre_off_constraint_surface(euclidean) -> None:
    """Test that W depends on A^A_{cd} away from the constraint surface."""
    rng = np.random.default_rng(1)
    A = rng.normal(size=(10, 4, 4))
    A = A - np.swapaxes(A, 1, 2)
    psi = legendre_constraint_heads(euclidean)
    psi[0, 0, 1], psi[0, 1, 0] = 1.0, -1.0
    value = legendre_W(euclidean, 0.0, A, psi)
    assert value.stationarity_residual == pytest.approx(1.0)
    assert value.W == pytest.approx(A[0, 0, 1])


@pytest.mark.parametrize("kind", ["lorentzian", "euclidean"])
def test_legendre_gradient_matches_difference_quotient(kind: str, request: pytest.FixtureRequest) -> None:
    """Test the gradient of W against central differences in each independent A^A_{cd}."""
    tables = request.getfixturevalue(kind)
    rng = np.random.default_rng(5)
    iu = np.triu_indices(4, 1)
    for _ in range(10):
        A = 0.1 * rng.normal(size=(10, 4, 4))
        A = A - np.swapaxes(A, 1, 2)
        psi = rng.normal(size=(10, 4, 4))
        psi = psi - np.swapaxes(psi, 1, 2)
        value = legendre_W(tables, 0.3, A, psi)
        numeric = np.zeros_like(value.gradient)
        for a in range(10):
            for pair, (c, d) in enumerate(zip(*iu, strict=True)):
                bump = np.zeros_like(A)
                bump[a, c, d], bump[a, d, c] = 1.0, -1.0
                # W is affine in A, so a unit step is exact up to rounding.
                numeric[a, pair] = 0.5 * (legendre_W(tables, 0.3, A + bump, psi).W - legendre_W(tables, 0.3, A - bump, psi).W)
        assert np.max(np.abs(numeric - value.gradient)) < 1e-13
