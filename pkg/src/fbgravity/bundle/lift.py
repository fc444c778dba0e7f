"""Lift of a vierbein/connection pair to the coframe (alpha, omega) on the bundle chart.

At a chart point (x, y) with g = exp(y^i u_i):

    alpha^a = (g^-1)^a_{a'} e^{a'},    omega = g^-1 dg + g^-1 A g,

so that eta = alpha^a l_a + omega^i u_i = Ad_{g^-1}(e + A) + g^-1 dg. Rows of the
10x10 coframe matrix are the chart components of alpha^0..alpha^3, omega^0..omega^5.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from fbgravity.algebra.actions import GroupElement
from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.exceptions import SingularCoframeError
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import RANK_TOLERANCE, DiffConfig, d_from_partials, fd_partials
from fbgravity.forms.form import FormValue, change_basis, wedge_all
from fbgravity.forms.maurer_cartan import maurer_cartan, maurer_cartan_partials
from fbgravity.forms.notation import CoframeForms, coframe_forms
from fbgravity.forms.valued import bracket_wedge
from fbgravity.geometry.curvature import CurvatureData, christoffel_Y, curvature
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LiftedFields:
    """Pointwise values of the lifted coframe and the background data it is built from.

    Attributes:
        tables: Algebra tables of the scenario signature.
        point: Chart point (x, y).
        g: Group element exp(y^i u_i).
        gamma: Maurer-Cartan matrix Gamma^i_j with gamma^i = Gamma^i_j dy^j.
        e: Vierbein e[a, mu].
        A: Connection A[a, b, mu].
        coframe: Matrix of (alpha, omega), shape (10, 10).
        base_coframe: Block-diagonal matrix of (e, gamma), shape (10, 10).
        transfer: L with coframe = L @ base_coframe.
        ad_connection: (Ad_{g^-1} A_b)^j stored [b, j], where A_b = A_mu E^mu_b.
    """

    tables: AlgebraTables
    point: ChartPoint
    g: GroupElement
    gamma: np.ndarray
    e: np.ndarray
    A: np.ndarray
    coframe: np.ndarray
    base_coframe: np.ndarray
    transfer: np.ndarray
    ad_connection: np.ndarray

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.coframe))

    @property
    def eta(self) -> FormValue:
        """The p-valued 1-form eta on the 10-dimensional chart, value axis [A]."""
        return FormValue(DIM_P, 1, self.coframe)

    def forms(self) -> CoframeForms:
        """eta^(10), eta^(9)_B and eta^(8)_{BC} of the (alpha, omega) coframe."""
        return coframe_forms(self.coframe)

    def base_forms(self) -> CoframeForms:
        """The same shorthands for the (e, gamma) coframe."""
        return coframe_forms(self.base_coframe)


def lifted_coframe(cfg: FieldConfig, tables: AlgebraTables, z: np.ndarray) -> np.ndarray:
    """10x10 coframe matrix of (alpha, omega) at the chart point z = (x, y)."""
    point = ChartPoint.from_z(z)
    gamma, g = maurer_cartan(tables, point.y)
    gm, gi = g.matrix, g.inverse_matrix
    coframe = np.zeros((DIM_P, DIM_P))
    coframe[:DIM_BASE, :DIM_BASE] = gi @ cfg.e(point.x)
    conjugated = np.einsum("ab,bcm,cd->adm", gi, cfg.A(point.x), gm)
    coframe[DIM_BASE:, :DIM_BASE] = tables.g_components(np.moveaxis(conjugated, -1, 0)).T
    coframe[DIM_BASE:, DIM_BASE:] = gamma
    return coframe


def lifted_coframe_partials(cfg: FieldConfig, tables: AlgebraTables, z: np.ndarray, diff: DiffConfig) -> np.ndarray:
    """Chart partials of the lifted coframe, stored [nu, row, column].

    In analytic mode the x-derivatives come from the scenario partials and the
    y-derivatives from d_l g^-1 = -gamma_l g^-1 with gamma_l = u_i Gamma^i_l.
    """
    z = np.asarray(z, dtype=float)
    if not (diff.analytic and cfg.has_analytic_partials):
        return fd_partials(lambda w: lifted_coframe(cfg, tables, w), z, diff.as_finite_difference())
    point = ChartPoint.from_z(z)
    gamma, g = maurer_cartan(tables, point.y)
    gm, gi = g.matrix, g.inverse_matrix
    e, A = cfg.e(point.x), cfg.A(point.x)
    de, dA = cfg.de(point.x, diff), cfg.dA(point.x, diff)

    out = np.zeros((DIM_P, DIM_P, DIM_P))
    out[:DIM_BASE, :DIM_BASE, :DIM_BASE] = np.einsum("ab,nbm->nam", gi, de)
    d_conj = np.einsum("ab,nbcm,cd->nmad", gi, dA, gm)
    out[:DIM_BASE, DIM_BASE:, :DIM_BASE] = np.swapaxes(tables.g_components(d_conj), 1, 2)

    generators = np.einsum("il,iab->lab", gamma, tables.rep_g)
    conjugated = np.einsum("ab,bcm,cd->mad", gi, A, gm)
    d_alpha = -np.einsum("lab,bc,cm->lam", generators, gi, e)
    d_omega = np.einsum("mab,lbc->lmac", conjugated, generators) - np.einsum("lab,mbc->lmac", generators, conjugated)
    out[DIM_BASE:, :DIM_BASE, :DIM_BASE] = d_alpha
    out[DIM_BASE:, DIM_BASE:, :DIM_BASE] = np.swapaxes(tables.g_components(d_omega), 1, 2)
    out[DIM_BASE:, DIM_BASE:, DIM_BASE:] = maurer_cartan_partials(tables, point.y)
    return out


def lift(cfg: FieldConfig, tables: AlgebraTables, point: ChartPoint) -> LiftedFields:
    """Assemble (alpha, omega) and the (e, gamma) coframe at a chart point.

    Raises:
        ChartError: If y lies outside the exponential chart.
        VierbeinError: If e(x) is singular.
        SingularCoframeError: If the 10x10 coframe has |det| below the rank tolerance.
    """
    gamma, g = maurer_cartan(tables, point.y)
    e, A = cfg.e(point.x), cfg.A(point.x)
    coframe = lifted_coframe(cfg, tables, point.z)
    det = float(np.linalg.det(coframe))
    if abs(det) < RANK_TOLERANCE:
        raise SingularCoframeError(f"Lifted coframe of '{cfg.name}' is degenerate at {point.to_dict()} (det={det:.3e})", det=det)

    base = np.zeros((DIM_P, DIM_P))
    base[:DIM_BASE, :DIM_BASE] = e
    base[DIM_BASE:, DIM_BASE:] = gamma

    frame = np.linalg.inv(e)
    along_frame = np.einsum("abm,mc->cab", A, frame)
    ad_connection = tables.g_components(np.einsum("ab,cbd,de->cae", g.inverse_matrix, along_frame, g.matrix))

    transfer = np.eye(DIM_P)
    transfer[:DIM_BASE, :DIM_BASE] = g.inverse_matrix
    transfer[DIM_BASE:, :DIM_BASE] = ad_connection.T
    return LiftedFields(tables, point, g, gamma, e, A, coframe, base, transfer, ad_connection)


@dataclass(frozen=True, eq=False)
class CurvatureDecomposition:
    """Coefficients of Omega = d eta + 1/2 [eta ^ eta] in the (alpha, omega) basis.

    ``Q[A, B, C]`` is antisymmetric in (B, C) with Omega^A = 1/2 Q^A_{BC} eta^B ^ eta^C.
    """

    Q: np.ndarray
    omega_form: FormValue

    @property
    def cd(self) -> np.ndarray:
        return self.Q[:, :DIM_BASE, :DIM_BASE]

    @property
    def ck(self) -> np.ndarray:
        return self.Q[:, :DIM_BASE, DIM_BASE:]

    @property
    def jk(self) -> np.ndarray:
        return self.Q[:, DIM_BASE:, DIM_BASE:]

    def horizontal_residuals(self) -> dict[str, float]:
        """max |Q^A_{ck}| and max |Q^A_{jk}|; both vanish for lifted fields."""
        return {"horizontal_ck": float(np.max(np.abs(self.ck))), "horizontal_jk": float(np.max(np.abs(self.jk)))}


def two_form_matrix(two_form: FormValue) -> np.ndarray:
    n = two_form.n
    iu = np.triu_indices(n, 1)
    full = np.zeros(two_form.value_shape + (n, n))
    full[..., iu[0], iu[1]] = two_form.components
    return full - np.swapaxes(full, -1, -2)


def structure_form(tables: AlgebraTables, coframe: np.ndarray, coframe_partials: np.ndarray) -> FormValue:
    """Omega = d eta + 1/2 [eta ^ eta] in the dz basis for a chart coframe and its partials."""
    eta = FormValue(coframe.shape[1], 1, coframe)
    d_eta = d_from_partials(coframe_partials, coframe.shape[1], 1)
    return d_eta + 0.5 * bracket_wedge(tables, eta, eta)


def decompose_structure_form(tables: AlgebraTables, coframe: np.ndarray, coframe_partials: np.ndarray) -> CurvatureDecomposition:
    """Omega rewritten in the basis eta^B ^ eta^C of the coframe itself."""
    omega = structure_form(tables, coframe, coframe_partials)
    in_eta = change_basis(omega, np.linalg.inv(coframe))
    return CurvatureDecomposition(two_form_matrix(in_eta), omega)


def curvature_decomposition(cfg: FieldConfig, tables: AlgebraTables, point: ChartPoint, diff: DiffConfig) -> CurvatureDecomposition:
    """Q^A_{cd}, Q^A_{ck} and Q^A_{jk} of the lifted field at a chart point.

    Raises:
        DiffError: On derivative failures.
        SingularCoframeError: If the lifted coframe is degenerate.
    """
    lifted = lift(cfg, tables, point)
    partials = lifted_coframe_partials(cfg, tables, point.z, diff)
    return decompose_structure_form(tables, lifted.coframe, partials)


def conjugation_residuals(lifted: LiftedFields, decomposition: CurvatureDecomposition, cd: CurvatureData) -> dict[str, float]:
    """Compare the Q blocks with the conjugated torsion and curvature of the base.

    Q^a_{cd} = (g^-1)^a_{a'} g^{c'}_c g^{d'}_d T^{a'}_{c'd'} and the matrix view
    Q^a_{bcd} = u_i{}^a_b Q^i_{cd} = (g^-1 R_{c'd'} g)^a_b g^{c'}_c g^{d'}_d.
    """
    gm, gi = lifted.g.matrix, lifted.g.inverse_matrix
    tables = lifted.tables
    expected_T = np.einsum("ax,xyz,yc,zd->acd", gi, cd.T, gm, gm)
    expected_R = np.einsum("ax,xywz,yb,wc,zd->abcd", gi, cd.R, gm, gm, gm)
    rotation = np.einsum("icd,iab->abcd", decomposition.cd[DIM_BASE:], tables.rep_g)
    return {
        "torsion_conjugation": float(np.max(np.abs(decomposition.cd[:DIM_BASE] - expected_T))),
        "curvature_conjugation": float(np.max(np.abs(rotation - expected_R))),
    }


def kappa_contractions(lifted: LiftedFields, decomposition: CurvatureDecomposition, cd: CurvatureData) -> dict[str, float]:
    """kappa^{bc}_A (g^-1)^{a'}_a Q^A_{a'c} = 2 (g^-1)^b_{b'} Ric^{b'}_a and 1/2 kappa^{cd}_A Q^A_{cd} = S."""
    gi = lifted.g.inverse_matrix
    kappa = lifted.tables.kappa
    contracted = np.einsum("bcA,Axc,xa->ba", kappa, decomposition.cd, gi)
    scalar = 0.5 * float(np.einsum("cdA,Acd->", kappa, decomposition.cd))
    return {
        "kappa_ricci": float(np.max(np.abs(contracted - 2.0 * gi @ cd.Ric))),
        "kappa_scalar": abs(scalar - float(cd.S)),
    }


def volume_identity_residual(lifted: LiftedFields) -> float:
    """max |alpha^(4) ^ omega^(6) - alpha^(4) ^ gamma^(6)|."""
    eta = lifted.eta
    alpha4 = wedge_all(*(eta.take(a) for a in range(DIM_BASE)))
    omega6 = wedge_all(*(eta.take(DIM_BASE + i) for i in range(DIM_G)))
    fiber = FormValue(DIM_P, 1, lifted.base_coframe[DIM_BASE:])
    gamma6 = wedge_all(*(fiber.take(i) for i in range(DIM_G)))
    return (wedge_all(alpha4, omega6) - wedge_all(alpha4, gamma6)).max_abs()


def basis_change_residual(lifted: LiftedFields) -> float:
    """max_a |alpha^(3)_a ^ omega^(6) - g^{a'}_a (e^(3)_{a'} ^ gamma^(6) - (Ad_{g^-1} A_{a'})^i e^(4) ^ gamma^(5)_i)|."""
    lifted_codim = lifted.forms().codim1.components[:DIM_BASE]
    base_codim = lifted.base_forms().codim1.components
    inner = base_codim[:DIM_BASE] - np.einsum("ai,iI->aI", lifted.ad_connection, base_codim[DIM_BASE:])
    expected = np.einsum("xa,xI->aI", lifted.g.matrix, inner)
    return float(np.max(np.abs(lifted_codim - expected)))


def lift_diagnostics(cfg: FieldConfig, tables: AlgebraTables, point: ChartPoint, diff: DiffConfig) -> dict[str, float]:
    """All pointwise checks of the lift: conjugation, kappa contractions, horizontality, volume and basis identities."""
    lifted = lift(cfg, tables, point)
    decomposition = decompose_structure_form(tables, lifted.coframe, lifted_coframe_partials(cfg, tables, point.z, diff))
    cd = curvature(cfg, point.x, diff)
    out = {
        **conjugation_residuals(lifted, decomposition, cd),
        **kappa_contractions(lifted, decomposition, cd),
        **decomposition.horizontal_residuals(),
        "volume_identity": volume_identity_residual(lifted),
        "basis_change": basis_change_residual(lifted),
    }
    logger.debug(f"Lift diagnostics at {point.to_dict()}: {out}")
    return out


def christoffel_data(cfg: FieldConfig, x: np.ndarray, diff: DiffConfig) -> tuple[CurvatureData, np.ndarray, np.ndarray]:
    """Curvature data with Gamma^a_{bc} and Y_c at a base point."""
    cd = curvature(cfg, x, diff)
    gamma, Y = christoffel_Y(cfg, x, diff, cd)
    return cd, gamma, Y
