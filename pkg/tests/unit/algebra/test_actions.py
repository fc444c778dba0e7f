"""Unit tests for group elements and the (co)adjoint actions."""

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from fbgravity.algebra import (
    DIM_G,
    DIM_P,
    GroupElement,
    PCovector,
    PVector,
    SignatureKind,
    adjoint,
    adjoint_matrix,
    build_algebra,
    coadjoint_Ad_star,
    coadjoint_ad_star,
    coadjoint_ad_star_components,
    coadjoint_matrix,
    pairing,
)
from fbgravity.algebra.identities import action_residuals, algebra_identity_residuals, random_group_element
from fbgravity.exceptions import AlgebraError, ChartError

LORENTZIAN = build_algebra(SignatureKind.LORENTZIAN)
EUCLIDEAN = build_algebra(SignatureKind.EUCLIDEAN)

finite = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
p_vectors = st.lists(finite, min_size=DIM_P, max_size=DIM_P).map(np.array)
small = st.floats(min_value=-0.15, max_value=0.15, allow_nan=False, allow_infinity=False)
chart_points = st.lists(small, min_size=DIM_G, max_size=DIM_G).map(np.array)


@pytest.mark.parametrize("tables", [LORENTZIAN, EUCLIDEAN], ids=["lorentzian", "euclidean"])
def test_action_identities_hold(tables) -> None:
    """Test the randomized action identities over 200 draws."""
    residuals = action_residuals(tables, np.random.default_rng(3), draws=200)
    for name, value in residuals.items():
        assert value < 1e-10, f"{name}: {value}"


def test_algebra_identity_residuals_merge_both_families() -> None:
    """Test that the combined residuals contain table and action families."""
    residuals = algebra_identity_residuals(LORENTZIAN, np.random.default_rng(0), draws=5)
    assert {"a86", "jacobi", "ad_star_pairing", "Ad_star_composition"} <= set(residuals)


def test_group_element_outside_chart() -> None:
    """Test that a point outside the exponential chart raises ChartError."""
    with pytest.raises(ChartError, match="outside exponential chart"):
        GroupElement.from_chart(LORENTZIAN, np.full(DIM_G, 2.0))


@pytest.mark.parametrize("tables", [LORENTZIAN, EUCLIDEAN], ids=["lorentzian", "euclidean"])
def test_group_element_preserves_h(tables) -> None:
    """Test g^T h g = h and det g = 1 for random chart points."""
    rng = np.random.default_rng(1)
    for _ in range(20):
        g = random_group_element(tables, rng)
        g.validate(tables)
        assert g.deviation(tables) < 1e-12


def test_validate_rejects_non_group_matrix() -> None:
    """Test that a scaled identity is not a group element."""
    with pytest.raises(AlgebraError, match="not an element"):
        GroupElement(2.0 * np.eye(4)).validate(LORENTZIAN)


def test_inverse_keeps_chart_preimage() -> None:
    """Test that the inverse of exp(y) carries -y."""
    y = np.array([0.1, -0.2, 0.05, 0.1, 0.0, -0.1])
    g = GroupElement.from_chart(LORENTZIAN, y)
    assert np.allclose(g.inverse().chart_y, -y)
    assert np.allclose(g.inverse().matrix @ g.matrix, np.eye(4), atol=1e-14)


def test_adjoint_rejects_singular_matrix() -> None:
    """Test that Ad with a singular matrix raises AlgebraError."""
    with pytest.raises(AlgebraError, match="non-invertible"):
        adjoint(LORENTZIAN, GroupElement(np.zeros((4, 4))), PVector(np.ones(DIM_P)))


def test_coadjoint_composition_law() -> None:
    """Test Ad*_{g1} Ad*_{g2} = Ad*_{g2 g1} on components."""
    rng = np.random.default_rng(7)
    g1 = random_group_element(LORENTZIAN, rng)
    g2 = random_group_element(LORENTZIAN, rng)
    lhs = coadjoint_matrix(LORENTZIAN, g1) @ coadjoint_matrix(LORENTZIAN, g2)
    assert np.allclose(lhs, coadjoint_matrix(LORENTZIAN, g2.compose(g1)), atol=1e-12)


def test_identity_element_acts_trivially() -> None:
    """Test that Ad of the identity is the identity matrix."""
    assert np.allclose(adjoint_matrix(LORENTZIAN, GroupElement.identity()), np.eye(DIM_P), atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(xi=p_vectors, lam=p_vectors)
def test_ad_star_tensor_formula_matches_components(xi: np.ndarray, lam: np.ndarray) -> None:
    """Test that the tensor formula of ad* agrees with lambda_B c^B_{CA} xi^C."""
    tensor = coadjoint_ad_star(LORENTZIAN, PVector(xi), PCovector(lam)).components
    assert np.allclose(tensor, coadjoint_ad_star_components(LORENTZIAN, xi, lam), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(y=chart_points, xi=p_vectors, lam=p_vectors)
def test_coadjoint_pairing_invariance(y: np.ndarray, xi: np.ndarray, lam: np.ndarray) -> None:
    """Test <Ad*_g lambda, xi> = <lambda, Ad_g xi>."""
    g = GroupElement.from_chart(EUCLIDEAN, y)
    lhs = pairing(coadjoint_Ad_star(EUCLIDEAN, g, PCovector(lam)), PVector(xi))
    rhs = pairing(PCovector(lam), adjoint(EUCLIDEAN, g, PVector(xi)))
    assert abs(lhs - rhs) < 1e-11
