"""Gauge transformations by the structure group and momentum shifts.

A gauge map f(x) acts on the base data by e -> f^-1 e, A -> f^-1 A f + f^-1 df. On the
bundle it is the map Phi(x, g) = (x, f(x) g); the lifted coframe of the transformed
pair at (x, g) is the pull-back by Phi of the original one, and the transformed
momentum is defined so that varpi is pulled back the same way. Coefficients in
the lifted coframe at (x, g) then match the original ones at Phi(x, g).
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Callable

import numpy as np
from scipy.linalg import logm

from fbgravity.algebra.actions import GroupElement, coadjoint_matrix
from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.bundle.hvdw import evaluate_point, theta_from
from fbgravity.bundle.lift import lifted_coframe
from fbgravity.bundle.momentum import MomentumField, antisymmetrize, head
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import DiffConfig, exterior_derivative
from fbgravity.forms.form import FormValue, combinations, wedge
from fbgravity.forms.maurer_cartan import AffineGroupField
from fbgravity.forms.valued import ad_star_wedge, bracket_wedge, coadjoint_form
from fbgravity.geometry.curvature import torsion_curvature
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GaugeMap:
    """f(x) = exp(X(x)) with X affine in x, with exact f^-1 df through the dexp series."""

    field: AffineGroupField

    @classmethod
    def random(cls, tables: AlgebraTables, rng: np.random.Generator, scale: float = 0.1, extent: float = 1.0) -> GaugeMap:
        """Random affine exponent; the slope is divided by ``extent``, the size of the sampled x-region."""
        field = AffineGroupField.random(tables, rng, DIM_BASE, scale)
        return cls(AffineGroupField(tables, field.x0, field.slope / max(1.0, extent)))

    @classmethod
    def identity(cls, tables: AlgebraTables) -> GaugeMap:
        return cls(AffineGroupField.constant(tables, np.zeros(DIM_G), DIM_BASE))

    @property
    def tables(self) -> AlgebraTables:
        return self.field.tables

    def element(self, x: np.ndarray) -> GroupElement:
        return self.field.element(x)

    def maurer_cartan(self, x: np.ndarray) -> np.ndarray:
        """(f^-1 d_mu f)^a_b, stored [a, b, mu]."""
        comps = self.field.maurer_cartan_form(x).components
        return np.moveaxis(self.tables.g_matrix(comps.T), 0, -1)


def constant_gauge(tables: AlgebraTables, y: np.ndarray) -> GaugeMap:
    """The constant gauge map f = exp(y^i u_i)."""
    return GaugeMap(AffineGroupField.constant(tables, y, DIM_BASE))


def chart_coordinates(tables: AlgebraTables, g: np.ndarray) -> np.ndarray:
    """y with exp(y^i u_i) = g, through the principal matrix logarithm.

    Raises:
        ChartError: If the logarithm lies outside the exponential chart.
    """
    y = tables.g_components(np.real(logm(g)))
    GroupElement.from_chart(tables, y)
    return y


def gauge_cfg(cfg: FieldConfig, gauge: GaugeMap) -> FieldConfig:
    """The transformed pair (f^-1 e, f^-1 A f + f^-1 df); partials are left to finite differences."""

    def vierbein(x: np.ndarray) -> np.ndarray:
        return gauge.element(x).inverse_matrix @ cfg.e(x)

    def connection(x: np.ndarray) -> np.ndarray:
        f = gauge.element(x)
        return np.einsum("ab,bcm,cd->adm", f.inverse_matrix, cfg.A(x), f.matrix) + gauge.maurer_cartan(x)

    return FieldConfig(
        name=f"{cfg.name}|gauge",
        signature=cfg.signature,
        vierbein=vierbein,
        connection=connection,
        domain=cfg.domain,
        box=cfg.box,
        description=f"Gauge transform of {cfg.name}",
    )


def matched_point(tables: AlgebraTables, gauge: GaugeMap, point: ChartPoint) -> ChartPoint:
    """Phi(x, y) = (x, y') with exp(y') = f(x) exp(y)."""
    g = GroupElement.from_chart(tables, point.y)
    return ChartPoint(point.x, chart_coordinates(tables, gauge.element(point.x).matrix @ g.matrix))


def gauge_momentum(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, gauge: GaugeMap) -> MomentumField:
    """Free components of the transformed momentum.

    With Phi^*(e, gamma) = L_f (f^-1 e, gamma), L_f^-1 = [[f^-1, 0], [-M, 1]] and
    M^i_b = (Ad_{g^-1}(f^-1 df)_b)^i, the coefficients at (x, g) are
    Ad*_f (L_f^-1 P(x, f g) L_f^-T).
    """

    def components(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        point = ChartPoint.from_z(z)
        f = gauge.element(point.x)
        g = GroupElement.from_chart(tables, point.y)
        target = matched_point(tables, gauge, point)
        full = mom.at(target.z).full(tables)
        along_frame = np.einsum("abm,mc->cab", gauge.maurer_cartan(point.x), cfg.frame(point.x))
        M = tables.g_components(np.einsum("ab,cbd,de->cae", g.inverse_matrix, along_frame, g.matrix)).T
        inverse = np.eye(DIM_P)
        inverse[:DIM_BASE, :DIM_BASE] = f.inverse_matrix
        inverse[DIM_BASE:, :DIM_BASE] = -M
        moved = np.einsum("PB,ABC,QC->APQ", inverse, full, inverse)
        out = np.einsum("AB,BPQ->APQ", coadjoint_matrix(tables, f), moved)
        return out[:, :DIM_BASE, DIM_BASE:], antisymmetrize(out[:, DIM_BASE:, DIM_BASE:])

    return MomentumField(f"{mom.name}|gauge", components)


def gauge_transform(cfg: FieldConfig, tables: AlgebraTables, mom: MomentumField, gauge: GaugeMap) -> tuple[FieldConfig, MomentumField]:
    """Transform (e, A) and the momentum by a gauge map."""
    return gauge_cfg(cfg, gauge), gauge_momentum(cfg, tables, mom, gauge)


def head_preservation_residual(tables: AlgebraTables, f: GroupElement) -> float:
    """max |Ad*_f (f^-1 kappa f^-T) - kappa| over the head coefficients."""
    fi = f.inverse_matrix
    moved = np.einsum("AB,xc,Bcd,yd->Axy", coadjoint_matrix(tables, f), fi, head(tables), fi)
    return float(np.max(np.abs(moved - head(tables))))


def gauge_conjugation_residuals(cfg: FieldConfig, gauge: GaugeMap, x: np.ndarray, diff: DiffConfig) -> dict[str, float]:
    """Torsion and curvature of the transformed pair against f^-1 (T, R) f in the new frame."""
    fd = diff.as_finite_difference()
    f = gauge.element(x)
    fm, fi = f.matrix, f.inverse_matrix
    before = torsion_curvature(cfg, x, fd)
    after = torsion_curvature(gauge_cfg(cfg, gauge), x, fd)
    expected_T = np.einsum("ax,xyz,yc,zd->acd", fi, before.T, fm, fm)
    expected_R = np.einsum("ax,xywz,yb,wc,zd->abcd", fi, before.R, fm, fm, fm)
    return {
        "torsion_conjugation": float(np.max(np.abs(after.T - expected_T))),
        "curvature_conjugation": float(np.max(np.abs(after.R - expected_R))),
    }


def covariance_residuals(
    cfg: FieldConfig,
    tables: AlgebraTables,
    mom: MomentumField,
    gauge: GaugeMap,
    point: ChartPoint,
    diff: DiffConfig,
) -> dict[str, float]:
    """Compare the transformed field at (x, y) with the original at Phi(x, y).

    Coefficients in the lifted coframe (Q, varpi, the theta density and the x-components
    of alpha) are invariant under the pull-back.
    """
    fd = diff.as_finite_difference()
    new_cfg, new_mom = gauge_transform(cfg, tables, mom, gauge)
    target = matched_point(tables, gauge, point)
    before = evaluate_point(cfg, tables, mom, target, fd)
    after = evaluate_point(new_cfg, tables, new_mom, point, fd)
    theta_before = theta_from(before.lifted, before.decomposition, before.varpi)
    theta_after = theta_from(after.lifted, after.decomposition, after.varpi)
    alpha_before = before.lifted.coframe[:DIM_BASE, :DIM_BASE]
    alpha_after = after.lifted.coframe[:DIM_BASE, :DIM_BASE]
    return {
        "lift_covariance": float(
            max(np.max(np.abs(after.decomposition.Q - before.decomposition.Q)), np.max(np.abs(alpha_after - alpha_before)))
        ),
        "varpi_covariance": float(np.max(np.abs(after.varpi.full - before.varpi.full))),
        "theta_invariance": abs(theta_after.value - theta_before.value),
        "transformed_constraint": float(np.max(np.abs(after.residuals.arrays["constraint"]))),
    }


ShiftField = Callable[[np.ndarray], FormValue]


def admissible_shift(tables: AlgebraTables, rng: np.random.Generator, scale: float = 0.1) -> ShiftField:
    """chi = Ad*_g chi_0 with chi_0 a constant combination of dx^(3) ^ dy^(5) forms in the g* slots.

    On a flat background (e = dx, A = 0) such chi is closed for d - ad*_eta ^ and
    satisfies chi ^ alpha^a ^ alpha^b = 0.
    """
    constant = FormValue.zero(DIM_P, DIM_P - 2, (DIM_P,))
    for x_indices in combinations(DIM_BASE, 3):
        for y_indices in combinations(DIM_G, DIM_G - 1):
            basis = FormValue.basis(DIM_P, x_indices + tuple(DIM_BASE + j for j in y_indices))
            weights = np.zeros(DIM_P)
            weights[DIM_BASE:] = scale * rng.normal(size=DIM_G)
            constant = constant + FormValue(DIM_P, basis.degree, np.outer(weights, basis.components))

    def field(z: np.ndarray) -> FormValue:
        g = GroupElement.from_chart(tables, np.asarray(z, dtype=float)[DIM_BASE:])
        return coadjoint_form(tables, g, constant)

    return field


@dataclass(frozen=True)
class MomentumShiftReport:
    """Effect of varpi -> varpi + chi on the theta density at one point.

    For any chi, chi ^ Omega = d(chi ^ eta) - 1/2 chi ^ [eta ^ eta] - (d chi - ad*_eta ^ chi) ^ eta,
    so under the closure precondition the density shift equals exact_term - bracket_remainder.
    """

    density_before: float
    density_after: float
    exact_term: float
    bracket_remainder: float
    closure: float
    horizontal: float

    @property
    def density_shift(self) -> float:
        return self.density_after - self.density_before

    @property
    def identity_residual(self) -> float:
        return abs(self.density_shift - (self.exact_term - self.bracket_remainder))

    def to_dict(self) -> dict[str, float]:
        return {
            "density_shift": self.density_shift,
            "exact_term": self.exact_term,
            "bracket_remainder": self.bracket_remainder,
            "closure": self.closure,
            "horizontal": self.horizontal,
            "identity_residual": self.identity_residual,
        }


def _pair(chi: FormValue, form: FormValue) -> FormValue:
    """sum_A chi_A ^ form^A."""
    product = wedge(chi, form)
    return FormValue(product.n, product.degree, np.sum(product.components, axis=0))


def momentum_shift_check(
    cfg: FieldConfig,
    tables: AlgebraTables,
    mom: MomentumField,
    chi: ShiftField,
    point: ChartPoint,
    diff: DiffConfig,
) -> MomentumShiftReport:
    """Measure the density shift and both preconditions; violations are reported, not raised."""
    fd = diff.as_finite_difference()
    evaluation = evaluate_point(cfg, tables, mom, point, diff)
    lifted = evaluation.lifted
    z = point.z
    det = lifted.det

    def eta_at(w: np.ndarray) -> FormValue:
        return FormValue(DIM_P, 1, lifted_coframe(cfg, tables, w))

    eta = lifted.eta
    chi_z = chi(z)
    before = theta_from(lifted, evaluation.decomposition, evaluation.varpi).literal
    shift = float(_pair(chi_z, evaluation.decomposition.omega_form).components[0]) / det

    exact = exterior_derivative(lambda w: _pair(chi(w), eta_at(w)), z, fd)
    bracket = 0.5 * float(_pair(chi_z, bracket_wedge(tables, eta, eta)).components[0]) / det
    closure = exterior_derivative(chi, z, fd) - ad_star_wedge(tables, eta, chi_z)

    alpha = FormValue(DIM_P, 1, eta.components[:DIM_BASE])
    pairs = wedge(alpha.take((slice(None), None)), alpha.take((None, slice(None))))
    horizontal = wedge(chi_z.take((slice(None), None, None)), pairs.take((None, slice(None), slice(None))))

    report = MomentumShiftReport(
        density_before=before,
        density_after=before + shift,
        exact_term=float(exact.components[0]) / det,
        bracket_remainder=bracket,
        closure=closure.max_abs(),
        horizontal=horizontal.max_abs(),
    )
    logger.debug(f"Momentum shift at {point.to_dict()}: {report.to_dict()}")
    return report

