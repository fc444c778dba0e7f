"""Hypotheses and local conclusions of the spontaneous fibration on a chart.

A coframe eta = (alpha, omega) of maximal rank on a 10-dimensional chart descends to a
4-dimensional base when its structure form Omega = d eta + 1/2 [eta ^ eta] is horizontal.
The kernel of alpha is then spanned by the dual vectors of omega, and both Pfaffian
systems alpha = 0 and d omega + omega ^ omega = 0 close on it.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Any, Callable

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, DIM_P, AlgebraTables
from fbgravity.bundle.lift import decompose_structure_form, lifted_coframe, lifted_coframe_partials, two_form_matrix
from fbgravity.exceptions import NormalizationError
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import RANK_TOLERANCE, DiffConfig, d_from_partials, fd_partials
from fbgravity.forms.maurer_cartan import maurer_cartan
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-8

CoframeFn = Callable[[np.ndarray], np.ndarray]
PartialsFn = Callable[[np.ndarray, DiffConfig], np.ndarray]


@dataclass(frozen=True, eq=False)
class CoframeField:
    """A 10x10 coframe matrix field z -> eta[A, mu] on the bundle chart.

    Attributes:
        name: Label used in reports.
        matrix: z -> coframe matrix.
        partials: Optional (z, diff) -> d_nu eta, stored [nu, A, mu]; finite differences otherwise.
    """

    name: str
    matrix: CoframeFn
    partials: PartialsFn | None = None

    def at(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(self.matrix(np.asarray(z, dtype=float)), dtype=float)

    def chart_partials(self, z: np.ndarray, diff: DiffConfig) -> np.ndarray:
        if self.partials is not None:
            return self.partials(np.asarray(z, dtype=float), diff)
        return fd_partials(self.matrix, z, diff.as_finite_difference())


def lifted_field(cfg: FieldConfig, tables: AlgebraTables) -> CoframeField:
    """The (alpha, omega) coframe lifted from a scenario."""
    return CoframeField(
        name=cfg.name,
        matrix=lambda z: lifted_coframe(cfg, tables, z),
        partials=lambda z, diff: lifted_coframe_partials(cfg, tables, z, diff),
    )


def coframe_row(base: CoframeField, row: int) -> CoframeFn:
    """z -> one row of a coframe field."""
    return lambda z: base.at(z)[row]


def maurer_cartan_row(tables: AlgebraTables, index: int) -> CoframeFn:
    """z -> gamma^index padded to the 10-dimensional chart."""

    def row(z: np.ndarray) -> np.ndarray:
        gamma, _ = maurer_cartan(tables, np.asarray(z, dtype=float)[DIM_BASE:])
        out = np.zeros(DIM_P)
        out[DIM_BASE:] = gamma[index]
        return out

    return row


def corrupted_field(base: CoframeField, target: int, source: CoframeFn, amplitude: float = 0.1, coordinate: int = 0) -> CoframeField:
    """eta^target -> eta^target + amplitude * z^coordinate * source, partials by finite differences."""

    def matrix(z: np.ndarray) -> np.ndarray:
        out = base.at(z).copy()
        out[target] += amplitude * z[coordinate] * source(z)
        return out

    return CoframeField(f"{base.name}|corrupted[{target}]", matrix)


@dataclass(frozen=True)
class FibrationDiagnostics:
    """Rank and integrability diagnostics at one point; residuals are None when the rank is deficient."""

    rank: int
    det: float
    horizontal_alpha: float | None = None
    horizontal_omega: float | None = None
    pfaff1: float | None = None
    pfaff3: float | None = None

    @property
    def rank_deficient(self) -> bool:
        return self.rank < DIM_P

    def max_residual(self) -> float:
        values = [v for v in (self.horizontal_alpha, self.horizontal_omega, self.pfaff1, self.pfaff3) if v is not None]
        return max(values) if values else float("inf")

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "det": self.det,
            "horizontal_alpha": self.horizontal_alpha,
            "horizontal_omega": self.horizontal_omega,
            "pfaff1": self.pfaff1,
            "pfaff3": self.pfaff3,
        }


def check_fibration_hypotheses(
    tables: AlgebraTables, field: CoframeField, point: ChartPoint, diff: DiffConfig
) -> FibrationDiagnostics:
    """Rank of eta, horizontality of Omega, and closure of both Pfaffian systems on ker alpha.

    ker alpha is spanned by the last six columns of the inverse coframe; pfaff1 is
    max |d alpha^a(v_j, v_k)| and pfaff3 max |(d omega + omega ^ omega)^i(v_j, v_k)|.
    """
    z = point.z
    coframe = field.at(z)
    det = float(np.linalg.det(coframe))
    if abs(det) < RANK_TOLERANCE:
        rank = int(np.linalg.matrix_rank(coframe, tol=RANK_TOLERANCE))
        logger.warning(f"Coframe {field.name} degenerate at {point.to_dict()}: rank {rank}, det {det:.3e}")
        return FibrationDiagnostics(rank=min(rank, DIM_P - 1), det=det)

    coframe_partials = field.chart_partials(z, diff)
    decomposition = decompose_structure_form(tables, coframe, coframe_partials)
    Q = decomposition.Q

    fiber_vectors = np.linalg.inv(coframe)[:, DIM_BASE:]
    d_eta = two_form_matrix(d_from_partials(coframe_partials, DIM_P, 1))
    omega = two_form_matrix(decomposition.omega_form)
    pfaff1 = np.einsum("amn,mj,nk->ajk", d_eta[:DIM_BASE], fiber_vectors, fiber_vectors)
    pfaff3 = np.einsum("imn,mj,nk->ijk", omega[DIM_BASE:], fiber_vectors, fiber_vectors)

    diagnostics = FibrationDiagnostics(
        rank=DIM_P,
        det=det,
        horizontal_alpha=float(max(np.max(np.abs(Q[:DIM_BASE, :DIM_BASE, DIM_BASE:])), np.max(np.abs(Q[:DIM_BASE, DIM_BASE:, DIM_BASE:])))),
        horizontal_omega=float(max(np.max(np.abs(Q[DIM_BASE:, :DIM_BASE, DIM_BASE:])), np.max(np.abs(Q[DIM_BASE:, DIM_BASE:, DIM_BASE:])))),
        pfaff1=float(np.max(np.abs(pfaff1))),
        pfaff3=float(np.max(np.abs(pfaff3))),
    )
    logger.debug(f"Fibration diagnostics for {field.name} at {point.to_dict()}: {diagnostics.to_dict()}")
    return diagnostics


def fiber_generators(tables: AlgebraTables, z: np.ndarray) -> np.ndarray:
    """rho_i = (0, Gamma^-1 e_i), the left-invariant fiber fields, stored [i, mu]."""
    gamma, _ = maurer_cartan(tables, np.asarray(z, dtype=float)[DIM_BASE:])
    out = np.zeros((gamma.shape[0], DIM_P))
    out[:, DIM_BASE:] = np.linalg.inv(gamma).T
    return out


def normalization_deviation(tables: AlgebraTables, field: CoframeField, z: np.ndarray) -> float:
    """max |eta(rho_i) - delta^A_{4+i}| at z."""
    contracted = np.einsum("Am,im->iA", field.at(z), fiber_generators(tables, z))
    expected = np.zeros_like(contracted)
    expected[:, DIM_BASE:] = np.eye(contracted.shape[0])
    return float(np.max(np.abs(contracted - expected)))


@dataclass(frozen=True)
class EquivarianceResiduals:
    """L_rho eta + [u_i, eta] against rho_i contracted into Omega.

    Under the normalization eta(rho_i) = u_i near p both are the same 1-form, so
    ``difference`` stays at FD level whether or not the field is equivariant.
    """

    lie: float
    curvature: float
    difference: float

    def to_dict(self) -> dict[str, float]:
        return {"lie": self.lie, "curvature": self.curvature, "difference": self.difference}


def equivariance_equivalence_check(
    tables: AlgebraTables, field: CoframeField, point: ChartPoint, diff: DiffConfig
) -> EquivarianceResiduals:
    """Lie-derivative and curvature forms of the equivariance condition.

    Raises:
        NormalizationError: If eta(rho_i) = u_i fails at p or its FD neighbours in x.
    """
    z = point.z
    fd = diff.as_finite_difference()
    probes = [z]
    for nu in range(DIM_BASE):
        step = fd.step * max(1.0, abs(z[nu]))
        for sign in (1.0, -1.0):
            shifted = z.copy()
            shifted[nu] += sign * step
            probes.append(shifted)
    deviation = max(normalization_deviation(tables, field, w) for w in probes)
    if deviation > NORMALIZATION_TOLERANCE:
        raise NormalizationError(f"Normalization rho_i -| eta = u_i violated near {point.to_dict()}", deviation)

    coframe = field.at(z)
    coframe_partials = field.chart_partials(z, diff)
    rho = fiber_generators(tables, z)
    d_eta = two_form_matrix(d_from_partials(coframe_partials, DIM_P, 1))
    omega = two_form_matrix(decompose_structure_form(tables, coframe, coframe_partials).omega_form)

    def contracted(w: np.ndarray) -> np.ndarray:
        return np.einsum("Am,im->iA", field.at(w), fiber_generators(tables, w))

    d_contracted = np.moveaxis(fd_partials(contracted, z, fd), 0, -1)  # [i, A, nu]
    interior_d = np.einsum("im,Amn->iAn", rho, d_eta)
    ad_eta = np.einsum("AiC,Cn->iAn", tables.struct_p[:, DIM_BASE:, :], coframe)
    lie = interior_d + d_contracted + ad_eta
    curvature = np.einsum("im,Amn->iAn", rho, omega)
    residuals = EquivarianceResiduals(
        lie=float(np.max(np.abs(lie))),
        curvature=float(np.max(np.abs(curvature))),
        difference=float(np.max(np.abs(lie - curvature))),
    )
    logger.debug(f"Equivariance residuals for {field.name} at {point.to_dict()}: {residuals.to_dict()}")
    return residuals
