"""Unit tests for gauge covariance and the momentum shift."""

import numpy as np
import pytest

from fbgravity.algebra.identities import random_group_element
from fbgravity.bundle import (
    GaugeMap,
    MomentumField,
    admissible_shift,
    constant_gauge,
    covariance_residuals,
    gauge_conjugation_residuals,
    gauge_transform,
    head_preservation_residual,
    matched_point,
    momentum_shift_check,
)
from fbgravity.bundle.gauge import chart_coordinates
from fbgravity.forms import ChartPoint, DiffConfig

FD = DiffConfig()


@pytest.mark.parametrize("signature", ["lorentzian", "euclidean"])
def test_head_is_gauge_invariant(signature, request) -> None:
    """Test Ad*_f (f^-1 kappa f^-T) = kappa for random group elements."""
    tables = request.getfixturevalue(signature)
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert head_preservation_residual(tables, random_group_element(tables, rng)) < 1e-10


def test_chart_coordinates_roundtrip(lorentzian) -> None:
    """Test y -> exp(y) -> y inside the chart."""
    y = np.array([0.1, -0.2, 0.05, 0.3, 0.0, -0.1])
    assert np.allclose(chart_coordinates(lorentzian, constant_gauge(lorentzian, y).element(np.zeros(4)).matrix), y, atol=1e-12)


def test_matched_point_of_constant_gauge(lorentzian) -> None:
    """Test Phi(x, 0) = (x, y0) for the constant gauge exp(y0)."""
    y0 = np.array([0.05, 0.1, -0.1, 0.0, 0.2, 0.1])
    target = matched_point(lorentzian, constant_gauge(lorentzian, y0), ChartPoint(np.ones(4), np.zeros(6)))
    assert np.allclose(target.y, y0, atol=1e-12)
    assert np.array_equal(target.x, np.ones(4))


def test_identity_gauge_changes_nothing(schwarzschild, lorentzian, bundle_point) -> None:
    """Test that the identity gauge reproduces the original pair and momentum."""
    mom = MomentumField.polynomial(np.random.default_rng(1))
    new_cfg, new_mom = gauge_transform(schwarzschild, lorentzian, mom, GaugeMap.identity(lorentzian))
    x = bundle_point.x
    assert np.allclose(new_cfg.e(x), schwarzschild.e(x), atol=1e-12)
    assert np.allclose(new_cfg.A(x), schwarzschild.A(x), atol=1e-12)
    assert np.allclose(new_mom.at(bundle_point.z).ck, mom.at(bundle_point.z).ck, atol=1e-10)


def test_conjugation_under_random_gauge(schwarzschild, lorentzian, bundle_point) -> None:
    """Test T' = f^-1 T f and R' = f^-1 R f in the transformed frame."""
    gauge = GaugeMap.random(lorentzian, np.random.default_rng(2), 0.1, extent=5.0)
    for name, value in gauge_conjugation_residuals(schwarzschild, gauge, bundle_point.x, FD).items():
        assert value < 1e-6, f"{name}: {value}"


def test_covariance_under_random_gauge(schwarzschild, lorentzian, bundle_point) -> None:
    """Test that Q, varpi, the density and the constraint are pulled back unchanged."""
    gauge = GaugeMap.random(lorentzian, np.random.default_rng(3), 0.1, extent=5.0)
    mom = MomentumField.polynomial(np.random.default_rng(4))
    values = covariance_residuals(schwarzschild, lorentzian, mom, gauge, bundle_point, FD)
    assert set(values) == {"lift_covariance", "varpi_covariance", "theta_invariance", "transformed_constraint"}
    for name, value in values.items():
        assert value < 1e-6, f"{name}: {value}"


def test_momentum_shift_on_flat_background(flat, lorentzian, bundle_point) -> None:
    """Test the density shift identity for an admissible chi on flat space."""
    chi = admissible_shift(lorentzian, np.random.default_rng(5))
    report = momentum_shift_check(flat, lorentzian, MomentumField.zero(), chi, bundle_point, FD)
    assert report.closure < 1e-6
    assert report.horizontal < 1e-12
    assert report.identity_residual < 1e-6
    assert set(report.to_dict()) == {"density_shift", "exact_term", "bracket_remainder", "closure", "horizontal", "identity_residual"}


def test_momentum_shift_reports_broken_closure(schwarzschild, lorentzian, bundle_point) -> None:
    """Test that a curved background violates the closure precondition without raising."""
    chi = admissible_shift(lorentzian, np.random.default_rng(6))
    report = momentum_shift_check(schwarzschild, lorentzian, MomentumField.zero(), chi, bundle_point, FD)
    assert report.closure > 1e-6
    assert np.isfinite(report.identity_residual)
