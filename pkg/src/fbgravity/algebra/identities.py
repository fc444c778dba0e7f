"""Self-consistency residuals of the algebra tables and of the coadjoint actions."""

from __future__ import annotations

import logging

import numpy as np

from fbgravity.algebra.actions import (
    GroupElement,
    PCovector,
    PVector,
    adjoint,
    adjoint_matrix,
    coadjoint_Ad_star,
    coadjoint_ad_star,
    coadjoint_ad_star_components,
    coadjoint_matrix,
    pairing,
    tensor_pairing,
)
from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.exceptions import ChartError

logger = logging.getLogger(__name__)


def table_residuals(tables: AlgebraTables) -> dict[str, float]:
    """Exact identities of the constant tables.

    Returns:
        Mapping family name -> max-abs residual.
    """
    h, h_inv = tables.h, tables.h_inv
    delta4 = np.eye(DIM_BASE)
    upper = tables.rep_upper

    a86 = 0.5 * np.einsum("iab,jab->ij", tables.dual_lower, upper) - np.eye(DIM_G)
    a86_mixed = 0.5 * np.einsum("iba,jab->ij", tables.dual_mixed, tables.rep_g) - np.eye(DIM_G)
    a87 = np.einsum("iab,icd->abcd", tables.dual_lower, upper) - 0.5 * (
        np.einsum("ac,bd->abcd", delta4, delta4) - np.einsum("ad,bc->abcd", delta4, delta4)
    )
    # u^{ib}_a (u_i)^{a'}_{b'} = 1/2 (delta^{a'}_a delta^b_{b'} - h^{a'b} h_{ab'}), stored [a, b, a', b']
    a88 = np.einsum("iba,icd->abcd", tables.dual_mixed, tables.rep_g) - 0.5 * (
        np.einsum("ac,bd->abcd", delta4, delta4) - np.einsum("cb,ad->abcd", h_inv, h)
    )

    antisym = upper + np.swapaxes(upper, 1, 2)
    h_antisym = np.einsum("ac,icb->iab", h, tables.rep_g) + np.einsum("ica,cb->iab", tables.rep_g, h)

    commutators = np.einsum("iab,jbc->ijac", tables.rep_g, tables.rep_g) - np.einsum("jab,ibc->ijac", tables.rep_g, tables.rep_g)
    bracket_g = commutators - np.einsum("kij,kab->ijab", tables.struct_g, tables.rep_g)

    c = tables.struct_p
    # c^A_{BE} c^E_{CD} + cyclic(B, C, D)
    jacobi = np.einsum("ABE,ECD->ABCD", c, c) + np.einsum("ACE,EDB->ABCD", c, c) + np.einsum("ADE,EBC->ABCD", c, c)
    basis = tables.affine_basis
    affine = np.einsum("Bxy,Cyz->BCxz", basis, basis) - np.einsum("Cxy,Byz->BCxz", basis, basis)
    bracket_p = affine - np.einsum("ABC,Axz->BCxz", c, basis)

    kappa_translation = tables.kappa[:, :, :DIM_BASE]
    kappa_rotation = tables.kappa[:, :, DIM_BASE:] - 2.0 * np.moveaxis(upper, 0, -1)
    kappa_mixed = tables.kappa_mixed - (np.einsum("ca,bd->abcd", delta4, h_inv) - np.einsum("da,bc->abcd", delta4, h_inv))

    return {
        "a86": float(max(np.max(np.abs(a86)), np.max(np.abs(a86_mixed)))),
        "a87": float(np.max(np.abs(a87))),
        "a88": float(np.max(np.abs(a88))),
        "generator_antisymmetry": float(max(np.max(np.abs(antisym)), np.max(np.abs(h_antisym)))),
        "bracket_g": float(np.max(np.abs(bracket_g))),
        "bracket_p": float(np.max(np.abs(bracket_p))),
        "jacobi": float(np.max(np.abs(jacobi))),
        "kappa": float(max(np.max(np.abs(kappa_translation)), np.max(np.abs(kappa_rotation)), np.max(np.abs(kappa_mixed)))),
    }


def random_group_element(tables: AlgebraTables, rng: np.random.Generator, scale: float = 0.8) -> GroupElement:
    """Draw a group element exp(y^i u_i) with y inside the chart."""
    while True:
        y = rng.normal(size=DIM_G)
        y *= scale * rng.uniform() / max(np.linalg.norm(tables.g_matrix(y), 2), 1e-12)
        try:
            return GroupElement.from_chart(tables, y)
        except ChartError:  # pragma: no cover - rejection loop
            continue


def action_residuals(tables: AlgebraTables, rng: np.random.Generator, draws: int = 1000) -> dict[str, float]:
    """Randomized identities of the (co)adjoint actions.

    Args:
        tables: Algebra tables.
        rng: Seeded generator.
        draws: Number of random draws per identity.

    Returns:
        Mapping family name -> max-abs residual over all draws.
    """
    worst: dict[str, float] = {
        "ad_star_pairing": 0.0,
        "ad_star_components": 0.0,
        "Ad_star_pairing": 0.0,
        "Ad_star_composition": 0.0,
        "Ad_ad_lemma": 0.0,
        "adjoint_inverse": 0.0,
        "tensor_pairing": 0.0,
    }
    for _ in range(draws):
        xi = PVector(rng.normal(size=DIM_P))
        zeta = PVector(rng.normal(size=DIM_P))
        lam = PCovector(rng.normal(size=DIM_P))
        g = random_group_element(tables, rng)
        g2 = random_group_element(tables, rng)
        g_inv = g.inverse()

        ad_star = coadjoint_ad_star(tables, xi, lam)
        bracket = PVector(tables.bracket(xi.components, zeta.components))
        _bump(worst, "ad_star_pairing", pairing(ad_star, zeta) - pairing(lam, bracket))
        _bump(worst, "ad_star_components", ad_star.components - coadjoint_ad_star_components(tables, xi.components, lam.components))

        Ad_star = coadjoint_Ad_star(tables, g, lam)
        _bump(worst, "Ad_star_pairing", pairing(Ad_star, xi) - pairing(lam, adjoint(tables, g, xi)))
        composed = coadjoint_matrix(tables, g) @ coadjoint_matrix(tables, g2) - coadjoint_matrix(tables, g2.compose(g))
        _bump(worst, "Ad_star_composition", composed)

        lhs = coadjoint_Ad_star(tables, g_inv, coadjoint_ad_star(tables, adjoint(tables, g_inv, xi), lam))
        rhs = coadjoint_ad_star(tables, xi, coadjoint_Ad_star(tables, g_inv, lam))
        _bump(worst, "Ad_ad_lemma", lhs.components - rhs.components)

        roundtrip = adjoint(tables, g, adjoint(tables, g_inv, xi)).components - xi.components
        _bump(worst, "adjoint_inverse", roundtrip)
        _bump(worst, "adjoint_inverse", adjoint(tables, g, xi).components - adjoint_matrix(tables, g) @ xi.components)
        _bump(worst, "tensor_pairing", tensor_pairing(tables, lam, xi) - pairing(lam, xi))
    return worst


def _bump(worst: dict[str, float], key: str, value: float | np.ndarray) -> None:
    worst[key] = max(worst[key], float(np.max(np.abs(value))))


def algebra_identity_residuals(tables: AlgebraTables, rng: np.random.Generator, draws: int = 1000) -> dict[str, float]:
    """Table identities followed by the randomized action identities."""
    return {**table_residuals(tables), **action_residuals(tables, rng, draws)}
