"""Maurer-Cartan form of the structure group in the exponential chart.

With g = exp(y^i u_i) the left Maurer-Cartan form is gamma = g^-1 dg = u_i gamma^i_j dy^j,
where gamma^i_j is the matrix of the series sum_k (-1)^k / (k+1)! ad_y^k.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from math import factorial

import numpy as np

from fbgravity.algebra.actions import CHART_RADIUS, GroupElement
from fbgravity.algebra.tables import DIM_G, AlgebraTables
from fbgravity.exceptions import ChartError
from fbgravity.forms.derivative import DiffConfig, d_from_partials, fd_partials
from fbgravity.forms.form import FormValue, codim1, codim2, wedge, wedge_all

logger = logging.getLogger(__name__)

SERIES_TOLERANCE = 1e-14
MAX_SERIES_TERMS = 60


def _series_coefficient(k: int) -> float:
    return (-1.0) ** k / factorial(k + 1)


def dexp_matrix(tables: AlgebraTables, y: np.ndarray) -> np.ndarray:
    """Matrix gamma^i_j of the right-trivialized derivative of exp at y.

    Raises:
        ChartError: If the series fails to converge.
    """
    ad = tables.ad_g_matrix(np.asarray(y, dtype=float))
    total = np.eye(DIM_G)
    power = np.eye(DIM_G)
    for k in range(1, MAX_SERIES_TERMS):
        power = power @ ad
        term = _series_coefficient(k) * power
        total = total + term
        if np.max(np.abs(term)) < SERIES_TOLERANCE:
            return total
    raise ChartError(f"dexp series did not converge within {MAX_SERIES_TERMS} terms (|ad_y| = {np.linalg.norm(ad, 2):.3f})")


def maurer_cartan(tables: AlgebraTables, y: np.ndarray, radius: float = CHART_RADIUS) -> tuple[np.ndarray, GroupElement]:
    """Maurer-Cartan components and group element at a fiber chart point.

    Args:
        tables: Algebra tables.
        y: Exponential chart coordinates, shape (6,).
        radius: Chart radius.

    Returns:
        (gamma, g) with gamma[i, j] = gamma^i_j so that gamma^i = gamma^i_j dy^j.

    Raises:
        ChartError: If y lies outside the chart or the series diverges.
    """
    g = GroupElement.from_chart(tables, y, radius)
    return dexp_matrix(tables, y), g


def maurer_cartan_partials(tables: AlgebraTables, y: np.ndarray) -> np.ndarray:
    """Analytic partials d gamma^i_j / d y^l, stored as [l, i, j].

    Differentiates the dexp series term by term: d(ad_y^k)/dy^l =
    sum_m ad_y^m C_l ad_y^(k-1-m) with (C_l)^i_j = c^i_{lj}.

    Raises:
        ChartError: If the series fails to converge.
    """
    ad = tables.ad_g_matrix(np.asarray(y, dtype=float))
    generators = np.moveaxis(tables.struct_g, 1, 0)  # [l, i, j] = c^i_{lj}
    powers = [np.eye(DIM_G)]
    out = np.zeros((DIM_G, DIM_G, DIM_G))
    for k in range(1, MAX_SERIES_TERMS):
        term = np.zeros_like(out)
        for m in range(k):
            term += np.einsum("ab,lbc,cd->lad", powers[m], generators, powers[k - 1 - m])
        term *= _series_coefficient(k)
        out += term
        powers.append(powers[-1] @ ad)
        if k > 2 and np.max(np.abs(term)) < SERIES_TOLERANCE:
            return out
    raise ChartError(f"Derivative of the dexp series did not converge within {MAX_SERIES_TERMS} terms")


@dataclass(frozen=True)
class FiberForms:
    """Maurer-Cartan coframe and its codimension forms at one point.

    All forms live on a chart of dimension ``n`` whose fiber coordinates start at ``offset``.
    """

    gamma: FormValue  # 1-forms, value axis [i]
    volume: FormValue  # gamma^(6)
    codim1: FormValue  # gamma^(5)_i
    codim2: FormValue  # gamma^(4)_{ij}


def fiber_coframe(tables: AlgebraTables, y: np.ndarray, n: int = 10, offset: int = 4) -> FormValue:
    """The six 1-forms gamma^i embedded in an n-dimensional chart."""
    gamma, _ = maurer_cartan(tables, y)
    comps = np.zeros((DIM_G, n))
    comps[:, offset:offset + DIM_G] = gamma
    return FormValue(n, 1, comps)


def fiber_forms(tables: AlgebraTables, y: np.ndarray, n: int = 10, offset: int = 4) -> FiberForms:
    """gamma^i, gamma^(6), gamma^(5)_i = rho_i _| gamma^(6), gamma^(4)_{ij} = rho_j _| gamma^(5)_i.

    The rho_i are the vector fields dual to gamma^i along the fiber.
    """
    coframe = fiber_coframe(tables, y, n, offset)
    gamma = coframe.components[:, offset:offset + DIM_G]
    dual = np.zeros((DIM_G, n))
    dual[:, offset:offset + DIM_G] = np.linalg.inv(gamma).T
    volume = wedge_all(*(coframe.take(i) for i in range(DIM_G)))
    return FiberForms(coframe, volume, codim1(n, dual, volume), codim2(n, dual, volume))


def _fiber_d(form_at, tables: AlgebraTables, y: np.ndarray, diff: DiffConfig, n: int, offset: int) -> FormValue:
    z = np.zeros(n)
    z[offset:offset + DIM_G] = y
    sample = form_at(y)

    def components(w: np.ndarray) -> np.ndarray:
        return form_at(w[offset:offset + DIM_G]).components

    partial = fd_partials(components, z, diff.as_finite_difference(), directions=range(offset, offset + DIM_G))
    return d_from_partials(partial, n, sample.degree)


def structure_equation_residual(tables: AlgebraTables, y: np.ndarray, diff: DiffConfig, n: int = 10, offset: int = 4) -> float:
    """max |d gamma^i + 1/2 c^i_{jk} gamma^j ^ gamma^k|."""
    coframe = fiber_coframe(tables, y, n, offset)
    if diff.analytic:
        partial = np.zeros((n, DIM_G, n))
        partial[offset:offset + DIM_G, :, offset:offset + DIM_G] = maurer_cartan_partials(tables, y)
        d_gamma = d_from_partials(partial, n, 1)
    else:
        d_gamma = _fiber_d(lambda w: fiber_coframe(tables, w, n, offset), tables, y, diff, n, offset)
    pairs = wedge(coframe.take((slice(None), None)), coframe.take((None, slice(None))))
    bracket = 0.5 * np.einsum("ijk,jkc->ic", tables.struct_g, pairs.components)
    return float(np.max(np.abs(d_gamma.components + bracket)))


def maurer_cartan_identities(tables: AlgebraTables, y: np.ndarray, diff: DiffConfig, n: int = 10, offset: int = 4) -> dict[str, float]:
    """Residuals of the Maurer-Cartan identities at one fiber point.

    Composite fiber forms are always differentiated by finite differences.

    Returns:
        Mapping with keys ``structure``, ``d_volume``, ``d_codim1`` and ``d_codim2``.
    """
    forms = fiber_forms(tables, y, n, offset)
    d_volume = _fiber_d(lambda w: fiber_forms(tables, w, n, offset).volume, tables, y, diff, n, offset)
    d_codim1 = _fiber_d(lambda w: fiber_forms(tables, w, n, offset).codim1, tables, y, diff, n, offset)
    d_codim2 = _fiber_d(lambda w: fiber_forms(tables, w, n, offset).codim2, tables, y, diff, n, offset)
    codim2_residual = d_codim2.components + np.einsum("kij,kc->ijc", tables.struct_g, forms.codim1.components)
    return {
        "structure": structure_equation_residual(tables, y, diff, n, offset),
        "d_volume": d_volume.max_abs(),
        "d_codim1": d_codim1.max_abs(),
        "d_codim2": float(np.max(np.abs(codim2_residual))),
    }


@dataclass(frozen=True, eq=False)
class AffineGroupField:
    """Structure-group valued map g(z) = exp(X(z)) with X(z) = x0 + B z affine in g.

    Attributes:
        tables: Algebra tables.
        x0: Constant part, shape (6,).
        slope: Linear part B, shape (6, n).
    """

    tables: AlgebraTables
    x0: np.ndarray
    slope: np.ndarray

    @classmethod
    def random(cls, tables: AlgebraTables, rng: np.random.Generator, n: int, scale: float = 0.2) -> AffineGroupField:
        return cls(tables, scale * rng.normal(size=DIM_G), 0.5 * scale * rng.normal(size=(DIM_G, n)))

    @classmethod
    def constant(cls, tables: AlgebraTables, y: np.ndarray, n: int) -> AffineGroupField:
        return cls(tables, np.asarray(y, dtype=float), np.zeros((DIM_G, n)))

    @property
    def n(self) -> int:
        return self.slope.shape[1]

    def exponent(self, z: np.ndarray) -> np.ndarray:
        return self.x0 + self.slope @ np.asarray(z, dtype=float)

    def element(self, z: np.ndarray) -> GroupElement:
        return GroupElement.from_chart(self.tables, self.exponent(z))

    def maurer_cartan_form(self, z: np.ndarray) -> FormValue:
        """g^-1 dg = u_i gamma^i_j dX^j, exact through the dexp series."""
        gamma = dexp_matrix(self.tables, self.exponent(z))
        return FormValue(self.n, 1, gamma @ self.slope)
