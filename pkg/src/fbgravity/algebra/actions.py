"""Group elements, p / p* vectors and the (co)adjoint actions."""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np
from scipy.linalg import expm

from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.exceptions import AlgebraError, ChartError

logger = logging.getLogger(__name__)

CHART_RADIUS = 1.0


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Element of the structure group in the vector representation.

    Attributes:
        matrix: g^a_b, shape (4, 4).
        chart_y: Optional exponential-chart preimage y with g = exp(y^i u_i).
    """

    matrix: np.ndarray
    chart_y: np.ndarray | None = None

    @classmethod
    def identity(cls) -> GroupElement:
        return cls(np.eye(DIM_BASE), np.zeros(DIM_G))

    @classmethod
    def from_chart(cls, tables: AlgebraTables, y: np.ndarray, radius: float = CHART_RADIUS) -> GroupElement:
        """Exponentiate y^i u_i.

        Args:
            tables: Algebra tables.
            y: Chart coordinates, shape (6,).
            radius: Chart radius in the operator norm of y^i u_i.

        Returns:
            Group element carrying its chart preimage.

        Raises:
            ChartError: If y lies outside the chart.
        """
        y = np.asarray(y, dtype=float)
        generator = tables.g_matrix(y)
        norm = np.linalg.norm(generator, 2)
        if norm >= radius:
            raise ChartError(f"Chart point outside exponential chart: |y.u| = {norm:.4f} >= {radius}")
        return cls(expm(generator), y.copy())

    @property
    def inverse_matrix(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def inverse(self) -> GroupElement:
        chart = None if self.chart_y is None else -self.chart_y
        return GroupElement(self.inverse_matrix, chart)

    def compose(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.matrix @ other.matrix)

    def deviation(self, tables: AlgebraTables) -> float:
        """Max deviation from g^T h g = h and det g = 1."""
        h = tables.h
        metric = np.max(np.abs(self.matrix.T @ h @ self.matrix - h))
        return float(max(metric, abs(np.linalg.det(self.matrix) - 1.0)))

    def validate(self, tables: AlgebraTables, tolerance: float = 1e-10) -> None:
        """Raise AlgebraError if the element is not in the structure group."""
        dev = self.deviation(tables)
        if not np.isfinite(dev) or dev > tolerance:
            raise AlgebraError(f"Matrix is not an element of the structure group (deviation {dev:.3e})")


@dataclass(frozen=True, eq=False)
class PVector:
    """Element xi = l_A xi^A of p; translations first, then g."""

    components: np.ndarray

    @classmethod
    def from_tensor(cls, tables: AlgebraTables, matrix: np.ndarray, translation: np.ndarray) -> PVector:
        """Build from the tensor view (xi^a_b, xi^a)."""
        comps = np.empty(DIM_P)
        comps[:DIM_BASE] = translation
        comps[DIM_BASE:] = tables.g_components(matrix)
        return cls(comps)

    @property
    def translation(self) -> np.ndarray:
        return self.components[:DIM_BASE]

    @property
    def rotation(self) -> np.ndarray:
        return self.components[DIM_BASE:]

    def to_tensor(self, tables: AlgebraTables) -> tuple[np.ndarray, np.ndarray]:
        return tables.g_matrix(self.rotation), self.translation.copy()


@dataclass(frozen=True, eq=False)
class PCovector:
    """Element lambda = lambda_A l^A of p*; translations first, then g*."""

    components: np.ndarray

    @classmethod
    def from_tensor(cls, tables: AlgebraTables, tensor: np.ndarray, translation: np.ndarray) -> PCovector:
        """Build from the tensor view (lambda_a^b, lambda_a), projecting onto g*."""
        comps = np.empty(DIM_P)
        comps[:DIM_BASE] = translation
        comps[DIM_BASE:] = tables.covector_components(tensor)
        return cls(comps)

    @property
    def translation(self) -> np.ndarray:
        return self.components[:DIM_BASE]

    @property
    def rotation(self) -> np.ndarray:
        return self.components[DIM_BASE:]

    def to_tensor(self, tables: AlgebraTables) -> tuple[np.ndarray, np.ndarray]:
        return tables.covector_tensor(self.rotation), self.translation.copy()


def pairing(lam: PCovector, xi: PVector) -> float:
    """lambda(xi) = lambda_A xi^A."""
    return float(lam.components @ xi.components)


def tensor_pairing(tables: AlgebraTables, lam: PCovector, xi: PVector) -> float:
    """lambda(xi) = 1/2 lambda_a^b xi^a_b + lambda_a xi^a evaluated on tensor views."""
    lam_t, lam_a = lam.to_tensor(tables)
    xi_t, xi_a = xi.to_tensor(tables)
    return float(0.5 * np.einsum("ab,ab->", lam_t, xi_t) + lam_a @ xi_a)


def adjoint_matrix(tables: AlgebraTables, g: GroupElement) -> np.ndarray:
    """10x10 matrix of Ad_g on components; block diagonal (g, Ad_g on g)."""
    gm, gi = g.matrix, g.inverse_matrix
    ad = np.zeros((DIM_P, DIM_P))
    ad[:DIM_BASE, :DIM_BASE] = gm
    ad[DIM_BASE:, DIM_BASE:] = tables.g_components(np.einsum("ab,jbc,cd->jad", gm, tables.rep_g, gi)).T
    return ad


def coadjoint_matrix(tables: AlgebraTables, g: GroupElement) -> np.ndarray:
    """Matrix of Ad*_g on p* components: (Ad*_g lambda)_A = lambda_B (Ad_g)^B_A."""
    return adjoint_matrix(tables, g).T


def adjoint(tables: AlgebraTables, g: GroupElement, xi: PVector) -> PVector:
    """Ad_g xi = (g xi g^-1, g xi_t).

    Raises:
        AlgebraError: If g is not invertible.
    """
    if abs(np.linalg.det(g.matrix)) < 1e-14:
        raise AlgebraError("Cannot apply Ad with a non-invertible matrix")
    matrix, translation = xi.to_tensor(tables)
    gm = g.matrix
    return PVector.from_tensor(tables, gm @ matrix @ np.linalg.inv(gm), gm @ translation)


def coadjoint_Ad_star(tables: AlgebraTables, g: GroupElement, lam: PCovector) -> PCovector:
    """Ad*_g lambda with tensor view (g^{a'}_a lambda_{a'}^{b'} (g^-1)^b_{b'}, g^{a'}_a lambda_{a'})."""
    tensor, translation = lam.to_tensor(tables)
    gm = g.matrix
    return PCovector.from_tensor(tables, gm.T @ tensor @ np.linalg.inv(gm).T, gm.T @ translation)


def coadjoint_ad_star(tables: AlgebraTables, xi: PVector, lam: PCovector) -> PCovector:
    """ad*_xi lambda from the tensor formula.

    The tensor (xi^c_a lambda_c^b - lambda_a^c xi^b_c - 2 lambda_a xi^b) is projected
    onto g*; its component view equals lambda_B c^B_{CA} xi^C.
    """
    xi_t, xi_a = xi.to_tensor(tables)
    lam_t, lam_a = lam.to_tensor(tables)
    tensor = xi_t.T @ lam_t - lam_t @ xi_t.T - 2.0 * np.outer(lam_a, xi_a)
    return PCovector.from_tensor(tables, tensor, xi_t.T @ lam_a)


def coadjoint_ad_star_components(tables: AlgebraTables, xi: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """(ad*_xi lambda)_A = lambda_B c^B_{CA} xi^C on raw component arrays."""
    return np.einsum("B,BCA,C->A", lam, tables.struct_p, xi)
