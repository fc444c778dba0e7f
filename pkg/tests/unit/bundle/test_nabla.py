"""Unit tests for the closed formulas of nabla^H p."""

import numpy as np
import pytest

from fbgravity.bundle import MomentumField, nabla_consistency, nabla_eta_varpi, nabla_fd, nabla_H_p
from fbgravity.forms import ChartPoint, DiffConfig, DiffMode

ANALYTIC = DiffConfig(DiffMode.ANALYTIC)


@pytest.mark.parametrize("scenario", ["flat", "schwarzschild"])
def test_closed_formulas_match_fd_oracle(scenario, lorentzian, bundle_point, request) -> None:
    """Test nabla^H p from closed formulas against dp - ad*_H ^ p by finite differences."""
    cfg = request.getfixturevalue(scenario)
    mom = MomentumField.polynomial(np.random.default_rng(11))
    assert nabla_consistency(cfg, lorentzian, mom, bundle_point, ANALYTIC) < 1e-6


def test_closed_formulas_euclidean(sphere, euclidean) -> None:
    """Test the closed formulas in Euclidean signature."""
    point = ChartPoint(np.array([0.2, -0.1, 0.1, 0.3]), np.array([0.1, 0.0, -0.1, 0.2, 0.05, -0.05]))
    mom = MomentumField.polynomial(np.random.default_rng(12))
    assert nabla_consistency(sphere, euclidean, mom, point, ANALYTIC) < 1e-6


def test_zero_momentum_on_flat_is_parallel(flat, lorentzian, bundle_point) -> None:
    """Test that the constrained head alone is parallel on flat space."""
    nabla = nabla_H_p(flat, lorentzian, MomentumField.zero(), bundle_point, ANALYTIC)
    zero = nabla_fd(flat, lorentzian, MomentumField.zero(), bundle_point, ANALYTIC)
    assert nabla.max_difference(zero) < 1e-6
    assert np.max(np.abs(nabla.a_base)) < 1e-10
    assert np.max(np.abs(nabla.ab_fiber)) < 1e-10


def test_transport_to_lifted_coframe(schwarzschild, lorentzian, bundle_point) -> None:
    """Test (dp - ad*_H ^ p) = Ad*_{g^-1}(d varpi - ad*_eta ^ varpi) on the lifted field."""
    mom = MomentumField.polynomial(np.random.default_rng(13))
    assert nabla_eta_varpi(schwarzschild, lorentzian, mom, bundle_point, DiffConfig()) < 1e-6
