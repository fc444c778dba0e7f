"""Covariant derivative of the momentum form, (nabla^H p) = dp - ad*_H ^ p.

Closed formulas give the coefficients of the 9-forms

    (nabla^H p)_a   = M_a^b e^(3)_b ^ gamma^(6) + N_a^j e^(4) ^ gamma^(5)_j,
    (nabla^H p)_a^b = M_a^{bc} e^(3)_c ^ gamma^(6) + N_a^{bj} e^(4) ^ gamma^(5)_j,

from the coframe derivatives f_{;a}, f_{;i} of the free components together with
Gamma^a_{bc}, Y_c, the torsion and the structure constants. The finite-difference
oracle evaluates dp - ad*_H ^ p directly on the 10-dimensional chart.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.bundle.lift import LiftedFields, christoffel_data, lift
from fbgravity.bundle.momentum import MomentumField, coframe_gradient, momentum_form
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import DiffConfig, exterior_derivative
from fbgravity.forms.form import FormValue, decompose
from fbgravity.forms.maurer_cartan import AffineGroupField, maurer_cartan
from fbgravity.forms.notation import coframe_forms
from fbgravity.forms.valued import ad_star_wedge, transport_corollary_residual
from fbgravity.geometry.curvature import CurvatureData
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NablaCoefficients:
    """Coefficients of nabla^H p in the (e^(3)_b ^ gamma^(6), e^(4) ^ gamma^(5)_j) basis.

    Attributes:
        a_base: M_a^b, stored [a, b].
        a_fiber: N_a^j, stored [a, j].
        ab_base: M_a^{bc}, stored [a, b, c].
        ab_fiber: N_a^{bj}, stored [a, b, j].
    """

    a_base: np.ndarray
    a_fiber: np.ndarray
    ab_base: np.ndarray
    ab_fiber: np.ndarray

    def max_difference(self, other: NablaCoefficients) -> float:
        return float(
            max(
                np.max(np.abs(self.a_base - other.a_base)),
                np.max(np.abs(self.a_fiber - other.a_fiber)),
                np.max(np.abs(self.ab_base - other.ab_base)),
                np.max(np.abs(self.ab_fiber - other.ab_fiber)),
            )
        )


@dataclass(frozen=True, eq=False)
class MomentumDerivatives:
    """Free components of p at a point and their coframe derivatives f_{;B}, B = 0..9."""

    ck: np.ndarray
    jk: np.ndarray
    d_ck: np.ndarray  # [B, A, c, k]
    d_jk: np.ndarray  # [B, A, j, k]

    def tensor_views(self, tables: AlgebraTables) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """p_a^{bck}, p_a^{bjk} and their coframe derivatives (derivative index first)."""
        mixed = tables.dual_mixed
        pab_ck = np.einsum("iba,ick->abck", mixed, self.ck[DIM_BASE:])
        pab_jk = np.einsum("iba,ijk->abjk", mixed, self.jk[DIM_BASE:])
        d_pab_ck = np.einsum("iba,Bick->Babck", mixed, self.d_ck[:, DIM_BASE:])
        d_pab_jk = np.einsum("iba,Bijk->Babjk", mixed, self.d_jk[:, DIM_BASE:])
        return pab_ck, pab_jk, d_pab_ck, d_pab_jk


def momentum_derivatives(lifted: LiftedFields, mom: MomentumField, diff: DiffConfig) -> MomentumDerivatives:
    """Evaluate the free components and their (e, gamma)-coframe derivatives.

    Raises:
        SingularCoframeError: If the (e, gamma) coframe is degenerate.
    """
    z = lifted.point.z
    comps = mom.at(z)
    dck, djk = mom.chart_partials(z, diff)
    return MomentumDerivatives(
        comps.ck,
        comps.jk,
        coframe_gradient(lifted.base_coframe, dck),
        coframe_gradient(lifted.base_coframe, djk),
    )


def torsion_block(T: np.ndarray, h_inv: np.ndarray) -> np.ndarray:
    """h^{bd} T^c_{ad} - h^{bc} T^d_{ad} + h^{be} T^d_{ed} delta^c_a, stored [a, b, c]."""
    trace = np.einsum("ded->e", T)
    return (
        np.einsum("bd,cad->abc", h_inv, T)
        - np.einsum("bc,dad->abc", h_inv, T)
        + np.einsum("be,e,ca->abc", h_inv, trace, np.eye(DIM_BASE))
    )


def nabla_closed(
    tables: AlgebraTables,
    derivs: MomentumDerivatives,
    cd: CurvatureData,
    christoffel: np.ndarray,
    Y: np.ndarray,
) -> NablaCoefficients:
    """Closed-form coefficients of (nabla^H p)_a and (nabla^H p)_a^b.

    Args:
        tables: Algebra tables.
        derivs: Free components and coframe derivatives.
        cd: Torsion of the base.
        christoffel: Gamma^a_{bc} with A^a_c = Gamma^a_{bc} e^b.
        Y: Y_c with d e^(3)_c = Y_c e^(4).
    """
    c = tables.struct_g
    ck, jk, dck, djk = derivs.ck, derivs.jk, derivs.d_ck, derivs.d_jk
    # p_a^{bk}_{;k}
    a_base = np.einsum("kabk->ab", dck[DIM_BASE:, :DIM_BASE])
    a_fiber = (
        -np.einsum("cacj->aj", dck[:DIM_BASE, :DIM_BASE])
        - np.einsum("acj,c->aj", ck[:DIM_BASE], Y)
        + np.einsum("bcj,bca->aj", ck[:DIM_BASE], christoffel)
        + np.einsum("kajk->aj", djk[DIM_BASE:, :DIM_BASE])
        - 0.5 * np.einsum("akl,jkl->aj", jk[:DIM_BASE], c)
    )

    pab_ck, pab_jk, d_pab_ck, d_pab_jk = derivs.tensor_views(tables)
    ab_base = torsion_block(cd.T, cd.h_inv) + np.einsum("kabck->abc", d_pab_ck[DIM_BASE:])
    ab_fiber = (
        -np.einsum("cabcj->abj", d_pab_ck[:DIM_BASE])
        - np.einsum("abcj,c->abj", pab_ck, Y)
        - np.einsum("bcx,axcj->abj", christoffel, pab_ck)
        + np.einsum("xca,xbcj->abj", christoffel, pab_ck)
        - 2.0 * ck[:DIM_BASE]
        + np.einsum("kabjk->abj", d_pab_jk[DIM_BASE:])
        - 0.5 * np.einsum("abkl,jkl->abj", pab_jk, c)
    )
    return NablaCoefficients(a_base, a_fiber, ab_base, ab_fiber)


def nabla_H_p(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> NablaCoefficients:
    """(nabla^H p) at a chart point from the closed formulas.

    Raises:
        SingularCoframeError: If the coframe is degenerate.
        DiffError: On derivative failures.
    """
    lifted = lift(cfg, tables, point)
    cd, christoffel, Y = christoffel_data(cfg, point.x, diff)
    return nabla_closed(tables, momentum_derivatives(lifted, mom, diff), cd, christoffel, Y)


def base_coframe_at(cfg: FieldConfig, tables: AlgebraTables, z: np.ndarray) -> np.ndarray:
    """Block-diagonal (e, gamma) coframe at z."""
    point = ChartPoint.from_z(z)
    gamma, _ = maurer_cartan(tables, point.y)
    out = np.zeros((DIM_P, DIM_P))
    out[:DIM_BASE, :DIM_BASE] = cfg.e(point.x)
    out[DIM_BASE:, DIM_BASE:] = gamma
    return out


def connection_form(cfg: FieldConfig, tables: AlgebraTables, z: np.ndarray) -> FormValue:
    """H = e^a l_a + A^i u_i as a p-valued 1-form on the 10-dimensional chart."""
    x = np.asarray(z, dtype=float)[:DIM_BASE]
    comps = np.zeros((DIM_P, DIM_P))
    comps[:DIM_BASE, :DIM_BASE] = cfg.e(x)
    comps[DIM_BASE:, :DIM_BASE] = tables.g_components(np.moveaxis(cfg.A(x), -1, 0)).T
    return FormValue(DIM_P, 1, comps)


def momentum_form_field(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField):
    """z -> p(z) as an 8-form on the chart."""

    def field(z: np.ndarray) -> FormValue:
        return momentum_form(tables, base_coframe_at(cfg, tables, z), mom.at(z))

    return field


def nabla_fd(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> NablaCoefficients:
    """Finite-difference oracle: dp - ad*_H ^ p decomposed along e^(3)_b ^ gamma^(6), e^(4) ^ gamma^(5)_j."""
    z = point.z
    field = momentum_form_field(cfg, tables, mom)
    nine = exterior_derivative(field, z, diff.as_finite_difference()) - ad_star_wedge(tables, connection_form(cfg, tables, z), field(z))
    basis = coframe_forms(base_coframe_at(cfg, tables, z)).codim1
    coeffs, _ = decompose(nine, basis)
    rotation = tables.covector_tensor(np.moveaxis(coeffs[DIM_BASE:], 0, -1))  # [B, a, b]
    return NablaCoefficients(
        coeffs[:DIM_BASE, :DIM_BASE],
        coeffs[:DIM_BASE, DIM_BASE:],
        np.moveaxis(rotation[:DIM_BASE], 0, -1),
        np.moveaxis(rotation[DIM_BASE:], 0, -1),
    )


def nabla_consistency(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> float:
    """max |closed formulas - finite-difference oracle|."""
    return nabla_H_p(cfg, tables, mom, point, diff).max_difference(nabla_fd(cfg, tables, mom, point, diff))


def fiber_exponential(tables: AlgebraTables) -> AffineGroupField:
    """g(z) = exp(y^i u_i) as an affine group field on the 10-dimensional chart."""
    slope = np.zeros((DIM_G, DIM_P))
    slope[:, DIM_BASE:] = np.eye(DIM_G)
    return AffineGroupField(tables, np.zeros(DIM_G), slope)


def nabla_eta_varpi(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, point: ChartPoint, diff: DiffConfig) -> float:
    """max |(dp - ad*_H ^ p) - Ad*_{g^-1}(d varpi - ad*_eta ^ varpi)| on the lifted field.

    With g = exp(y) and H = e + A, eta = Ad_{g^-1} H + g^-1 dg is the lifted coframe.
    """
    return transport_corollary_residual(
        tables,
        fiber_exponential(tables),
        lambda w: connection_form(cfg, tables, w),
        momentum_form_field(cfg, tables, mom),
        point.z,
        diff,
    )
