"""Unit tests for torsion, curvature and their contractions."""

import numpy as np
import pytest

from fbgravity.algebra import SignatureKind
from fbgravity.exceptions import VierbeinError
from fbgravity.forms import DiffConfig, DiffMode
from fbgravity.geometry import (
    CurvatureData,
    FieldConfig,
    christoffel_Y,
    curvature,
    first_bianchi_residual,
    frame_divergence_residual,
    levi_civita_connection,
    ricci_scalar_einstein,
    torsion_curvature,
    wec_density,
)
from fbgravity.scenarios import get_scenario_registry

ANALYTIC = DiffConfig(DiffMode.ANALYTIC)
FD = DiffConfig()
SCHWARZSCHILD_X = np.array([0.0, 4.0, 1.2, 0.5])


def build(scenario: str) -> FieldConfig:
    return get_scenario_registry().build(scenario)


def test_flat_space_is_flat() -> None:
    """Test vanishing torsion and curvature for the flat scenarios."""
    for name in ("flat_lorentzian", "flat_euclidean"):
        cd = curvature(build(name), np.array([0.1, 0.2, 0.3, 0.4]), ANALYTIC)
        assert np.max(np.abs(cd.T)) == 0.0
        assert np.max(np.abs(cd.R)) == 0.0
        assert cd.S == 0.0


@pytest.mark.parametrize("diff,tolerance", [(ANALYTIC, 1e-12), (FD, 1e-7)], ids=["analytic", "fd"])
def test_schwarzschild_is_vacuum(diff: DiffConfig, tolerance: float) -> None:
    """Test Ric = 0 and T = 0 for the Schwarzschild tetrad."""
    cd = curvature(build("schwarzschild:M=1.0"), SCHWARZSCHILD_X, diff)
    assert np.max(np.abs(cd.T)) < tolerance
    assert np.max(np.abs(cd.Ric)) < tolerance
    assert abs(cd.S) < tolerance


def test_schwarzschild_curvature_is_not_trivial() -> None:
    """Test that the Riemann tensor itself is non-zero (tidal field 2M/r^3)."""
    cd = curvature(build("schwarzschild:M=1.0"), SCHWARZSCHILD_X, ANALYTIC)
    assert np.isclose(np.max(np.abs(cd.R)), 2.0 / 4.0**3)


@pytest.mark.parametrize("radius", [1.0, 2.0])
def test_sphere_constant_curvature(radius: float) -> None:
    """Test Ric^b_a = 3/r^2 delta, S = 12/r^2 and E = -3/r^2 delta on the round S^4."""
    cfg = build(f"sphere_s4:r={radius}")
    cd = curvature(cfg, np.array([0.1, -0.2, 0.3, 0.05]) * radius, ANALYTIC)
    assert np.allclose(cd.Ric, 3.0 / radius**2 * np.eye(4), atol=1e-10)
    assert np.isclose(cd.S, 12.0 / radius**2)
    assert np.allclose(cd.E, -3.0 / radius**2 * np.eye(4), atol=1e-10)


def test_einstein_trace_identity() -> None:
    """Test E^a_a + S = 0 for a random antisymmetric curvature tensor."""
    rng = np.random.default_rng(0)
    R = rng.normal(size=(4, 4, 4, 4))
    R = R - np.swapaxes(R, 2, 3)
    cd = ricci_scalar_einstein(CurvatureData(T=np.zeros((4, 4, 4)), R=R, h=np.diag([1.0, -1.0, -1.0, -1.0])))
    assert abs(np.trace(cd.E) + cd.S) < 1e-12


def test_antisymmetry_of_constant_contorsion() -> None:
    """Test the index antisymmetries of T and R for a torsionful background."""
    cd = torsion_curvature(build("constant_contorsion:s=0.2"), np.zeros(4), ANALYTIC)
    assert np.max(np.abs(cd.T)) > 1e-3
    for name, value in cd.antisymmetry_residuals().items():
        assert value < 1e-13, name


def test_first_bianchi_holds_without_torsion() -> None:
    """Test the cyclic identity of R for torsion-free backgrounds."""
    cd = torsion_curvature(build("sphere_s4:r=1.5"), np.array([0.2, 0.1, 0.0, -0.3]), ANALYTIC)
    assert first_bianchi_residual(cd) < 1e-12


def test_frame_divergence() -> None:
    """Test d e^(3)_c = Y_c e^(4) on Schwarzschild."""
    assert frame_divergence_residual(build("schwarzschild:M=1.0"), SCHWARZSCHILD_X, FD) < 1e-7


def test_christoffel_reconstructs_connection() -> None:
    """Test A^a_{c mu} = Gamma^a_{bc} e^b_mu."""
    cfg = build("sphere_s4:r=1.0")
    x = np.array([0.3, 0.0, -0.1, 0.2])
    gamma, _ = christoffel_Y(cfg, x, ANALYTIC)
    assert np.allclose(np.einsum("abc,bm->acm", gamma, cfg.e(x)), cfg.A(x))


@pytest.mark.parametrize("scenario,x", [("schwarzschild:M=1.0", SCHWARZSCHILD_X), ("sphere_s4:r=1.0", np.array([0.1, 0.2, -0.1, 0.0]))])
def test_wec_density_equals_scalar_curvature(scenario: str, x: np.ndarray) -> None:
    """Test 1/2 eps e ^ e ^ F = S e^(4)."""
    cfg = build(scenario)
    S = curvature(cfg, x, ANALYTIC).S
    assert abs(wec_density(cfg, x, ANALYTIC) - S) < 1e-10


def test_levi_civita_connection_recovers_scenario_connection() -> None:
    """Test that solving T = 0 for the S^4 coframe gives the catalog connection."""
    cfg = build("sphere_s4:r=1.0")
    x = np.array([0.2, -0.1, 0.3, 0.1])
    assert np.allclose(levi_civita_connection(cfg, x, ANALYTIC), cfg.A(x), atol=1e-10)


def test_singular_vierbein() -> None:
    """Test that a degenerate vierbein raises VierbeinError."""
    cfg = FieldConfig(
        name="degenerate",
        signature=SignatureKind.EUCLIDEAN,
        vierbein=lambda x: np.diag([1.0, 1.0, 1.0, 0.0]),
        connection=lambda x: np.zeros((4, 4, 4)),
    )
    with pytest.raises(VierbeinError, match="singular"):
        cfg.e(np.zeros(4))


def test_field_config_analytic_flag() -> None:
    """Test has_analytic_partials and the connection antisymmetry check."""
    cfg = build("constant_contorsion")
    assert cfg.has_analytic_partials
    assert cfg.antisymmetry_deviation(np.zeros(4)) < 1e-14
    bare = FieldConfig("bare", SignatureKind.EUCLIDEAN, lambda x: np.eye(4), lambda x: np.zeros((4, 4, 4)))
    assert not bare.has_analytic_partials
