"""Unit tests for p- and p*-valued forms and the coadjoint transport identities."""

import numpy as np
import pytest

from fbgravity.algebra import DIM_P, SignatureKind, build_algebra, coadjoint_ad_star_components
from fbgravity.algebra.identities import random_group_element
from fbgravity.forms import (
    AffineGroupField,
    DiffConfig,
    FormValue,
    PolynomialFormField,
    ad_star_wedge,
    adjoint_form,
    bracket_wedge,
    coadjoint_form,
    coadjoint_lemma_residual,
    embed_rotation,
    fd_partials,
    transport_corollary_residual,
)

TABLES = [build_algebra(kind) for kind in SignatureKind]
IDS = [kind.value for kind in SignatureKind]


def test_ad_star_wedge_on_zero_forms() -> None:
    """Test that ad*_xi ^ lambda on 0-forms reduces to the pointwise coadjoint action."""
    tables = TABLES[1]
    rng = np.random.default_rng(0)
    xi, lam = rng.normal(size=(2, DIM_P))
    out = ad_star_wedge(tables, FormValue.scalar(3, xi), FormValue.scalar(3, lam))
    assert np.allclose(out.components[:, 0], coadjoint_ad_star_components(tables, xi, lam))


def test_bracket_wedge_on_zero_forms() -> None:
    """Test that [xi ^ zeta] on 0-forms is the Lie bracket."""
    tables = TABLES[0]
    rng = np.random.default_rng(1)
    xi, zeta = rng.normal(size=(2, DIM_P))
    out = bracket_wedge(tables, FormValue.scalar(2, xi), FormValue.scalar(2, zeta))
    assert np.allclose(out.components[:, 0], tables.bracket(xi, zeta))


def test_bracket_of_one_forms_is_symmetric() -> None:
    """Test [a ^ b] = [b ^ a] for p-valued 1-forms."""
    tables = TABLES[1]
    rng = np.random.default_rng(2)
    a = FormValue(4, 1, rng.normal(size=(DIM_P, 4)))
    b = FormValue(4, 1, rng.normal(size=(DIM_P, 4)))
    assert np.allclose(bracket_wedge(tables, a, b).components, bracket_wedge(tables, b, a).components)


def test_coadjoint_and_adjoint_forms_pair_invariantly() -> None:
    """Test <Ad*_g lambda, Ad_{g^-1} xi> = <lambda, xi> on 0-forms."""
    tables = TABLES[1]
    rng = np.random.default_rng(3)
    g = random_group_element(tables, rng)
    xi, lam = rng.normal(size=(2, DIM_P))
    moved_lam = coadjoint_form(tables, g, FormValue.scalar(1, lam)).components[:, 0]
    moved_xi = adjoint_form(tables, g.inverse(), FormValue.scalar(1, xi)).components[:, 0]
    assert np.isclose(moved_lam @ moved_xi, lam @ xi)


def test_embed_rotation_zero_translations() -> None:
    """Test that embedded g-valued forms have zero translation components."""
    embedded = embed_rotation(FormValue(4, 1, np.ones((6, 4))))
    assert embedded.value_shape == (DIM_P,)
    assert np.all(embedded.components[:4] == 0.0)


def test_polynomial_field_partials() -> None:
    """Test that analytic partials of a polynomial field match its FD partials."""
    field = PolynomialFormField.random(np.random.default_rng(4), 3, 1, (2,))
    z = np.array([0.5, -0.5, 0.25])
    fd = fd_partials(lambda w: field(w).components, z, DiffConfig())
    assert np.allclose(field.partials(z), fd, atol=1e-9)


@pytest.mark.parametrize("tables", TABLES, ids=IDS)
def test_coadjoint_lemma(tables) -> None:
    """Test d(Ad*_{g^-1} varpi) = Ad*_{g^-1}(d varpi - ad*_{g^-1 dg} ^ varpi) on random fields."""
    rng = np.random.default_rng(6)
    for _ in range(3):
        g_field = AffineGroupField.random(tables, rng, 5, 0.2)
        varpi = PolynomialFormField.random(rng, 5, 2, (DIM_P,), 0.5)
        z = 0.3 * rng.normal(size=5)
        assert coadjoint_lemma_residual(tables, g_field, varpi, z, DiffConfig()) < 1e-6


@pytest.mark.parametrize("tables", TABLES, ids=IDS)
def test_transport_corollary(tables) -> None:
    """Test the transport of dp - ad*_H ^ p to the varpi side on random fields."""
    rng = np.random.default_rng(7)
    for _ in range(3):
        g_field = AffineGroupField.random(tables, rng, 5, 0.2)
        connection = PolynomialFormField.random(rng, 5, 1, (DIM_P,), 0.5)
        momentum = PolynomialFormField.random(rng, 5, 3, (DIM_P,), 0.5)
        z = 0.3 * rng.normal(size=5)
        assert transport_corollary_residual(tables, g_field, connection, momentum, z, DiffConfig()) < 1e-6
