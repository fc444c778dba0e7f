"""Partial derivatives, exterior derivative and coframe derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging
from math import comb
from typing import Callable

import numpy as np

from fbgravity.exceptions import DiffError, FormDegreeError, SingularCoframeError
from fbgravity.forms.form import FormValue, derivative_table

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-8

# Central-difference stencils: offsets (in units of h) and weights.
_STENCILS: dict[int, tuple[tuple[int, ...], tuple[float, ...]]] = {
    2: ((1, -1), (0.5, -0.5)),
    4: ((2, 1, -1, -2), (-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0)),
}


class DiffMode(str, Enum):
    """How chart partial derivatives are obtained."""

    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class DiffConfig:
    """Derivative settings.

    Attributes:
        mode: Analytic partials or central finite differences.
        step: Relative FD step; the step along z_nu is step * max(1, |z_nu|).
        order: Central-difference order, 2 or 4.
        richardson: Always apply one Richardson refinement (steps h and h/2).
        refine_above: When set, apply the refinement only where the h and h/2
            estimates differ by more than this value.
    """

    mode: DiffMode = DiffMode.FINITE_DIFFERENCE
    step: float = 1e-4
    order: int = 4
    richardson: bool = False
    refine_above: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", DiffMode(self.mode))
        if not self.step > 0:
            raise DiffError(f"FD step must be positive, got {self.step}")
        if self.order not in _STENCILS:
            raise DiffError(f"FD order must be one of {sorted(_STENCILS)}, got {self.order}")
        if self.refine_above is not None and not self.refine_above > 0:
            raise DiffError(f"Refinement threshold must be positive, got {self.refine_above}")

    @property
    def analytic(self) -> bool:
        return self.mode is DiffMode.ANALYTIC

    def as_finite_difference(self) -> DiffConfig:
        return DiffConfig(DiffMode.FINITE_DIFFERENCE, self.step, self.order, self.richardson, self.refine_above)


def _central(field: Callable[[np.ndarray], np.ndarray], z: np.ndarray, nu: int, h: float, order: int) -> np.ndarray:
    offsets, weights = _STENCILS[order]
    total = None
    for offset, weight in zip(offsets, weights, strict=True):
        shifted = z.copy()
        shifted[nu] += offset * h
        term = weight * np.asarray(field(shifted), dtype=float)
        total = term if total is None else total + term
    return total / h


def fd_partials(field: Callable[[np.ndarray], np.ndarray], z: np.ndarray, diff: DiffConfig, directions: range | None = None) -> np.ndarray:
    """Central-difference partials of an array-valued field.

    Args:
        field: Map z -> array.
        z: Chart point.
        diff: Derivative settings (mode is ignored).
        directions: Coordinates to differentiate (default: all).

    Returns:
        Array of shape (n, *field_shape); rows outside ``directions`` are zero.

    Raises:
        DiffError: If a step underflows at z.
    """
    z = np.asarray(z, dtype=float)
    directions = range(z.size) if directions is None else directions
    rows = {}
    for nu in directions:
        h = diff.step * max(1.0, abs(z[nu]))
        if z[nu] + h == z[nu] or h < np.finfo(float).tiny:
            raise DiffError(f"FD step underflow along coordinate {nu} at z={z[nu]!r}")
        estimate = _central(field, z, nu, h, diff.order)
        if diff.richardson or diff.refine_above is not None:
            refined = _central(field, z, nu, 0.5 * h, diff.order)
            spread = float(np.max(np.abs(refined - estimate), initial=0.0))
            if diff.refine_above is None or diff.richardson or spread > diff.refine_above:
                factor = 2.0 ** diff.order
                estimate = (factor * refined - estimate) / (factor - 1.0)
        rows[nu] = estimate
    template = next(iter(rows.values()))
    out = np.zeros((z.size,) + template.shape)
    for nu, row in rows.items():
        out[nu] = row
    return out


def partials(
    field: Callable[[np.ndarray], np.ndarray],
    z: np.ndarray,
    diff: DiffConfig,
    analytic: Callable[[np.ndarray], np.ndarray] | None = None,
) -> np.ndarray:
    """Chart partials d_nu field(z), shape (n, *field_shape).

    Raises:
        DiffError: In analytic mode without analytic partials.
    """
    if diff.analytic:
        if analytic is None:
            raise DiffError("Analytic differentiation requested but no analytic partials were supplied")
        return np.asarray(analytic(z), dtype=float)
    return fd_partials(field, z, diff)


def d_from_partials(form_partials: np.ndarray, n: int, degree: int) -> FormValue:
    """Assemble d omega from the chart partials of its components.

    Args:
        form_partials: Array (n, ..., C(n, degree)) with d_nu omega_I.
        n: Chart dimension.
        degree: Degree of omega.
    """
    i_out, i_dir, i_src, sign = derivative_table(n, degree)
    value_shape = form_partials.shape[1:-1]
    out = np.zeros((comb(n, degree + 1),) + value_shape)
    # Fancy indices on both ends of the slice move the broadcast axis to the front.
    terms = form_partials[i_dir, ..., i_src]
    terms = terms * sign.reshape((-1,) + (1,) * len(value_shape))
    np.add.at(out, i_out, terms)
    return FormValue(n, degree + 1, np.moveaxis(out, 0, -1))


def exterior_derivative(
    field: Callable[[np.ndarray], FormValue],
    z: np.ndarray,
    diff: DiffConfig,
    analytic_partials: Callable[[np.ndarray], np.ndarray] | None = None,
) -> FormValue:
    """Exterior derivative of a form field at z.

    Args:
        field: Map z -> FormValue (fixed n, degree and value shape).
        z: Chart point.
        diff: Derivative settings.
        analytic_partials: Map z -> d_nu components, shape (n, ..., C(n, k)); used in analytic mode.

    Returns:
        d(field) at z.

    Raises:
        DiffError: On FD step underflow or missing analytic partials.
        FormDegreeError: If the field has top degree.
    """
    z = np.asarray(z, dtype=float)
    sample = field(z)
    if sample.degree >= sample.n:
        raise FormDegreeError(f"d of a top-degree form on a {sample.n}-dimensional chart is not representable")
    comps = partials(lambda w: field(w).components, z, diff, analytic_partials)
    return d_from_partials(comps, sample.n, sample.degree)


def coframe_derivatives(
    f: Callable[[np.ndarray], np.ndarray],
    z: np.ndarray,
    coframe: np.ndarray,
    diff: DiffConfig,
    analytic_partials: Callable[[np.ndarray], np.ndarray] | None = None,
    split: int = 4,
    chart_partials: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of df = f_{;a} e^a + f_{;i} gamma^i in a coframe.

    Solves E^T f_; = df/dz for the coframe matrix E whose rows are the chart
    components of the coframe 1-forms.

    Args:
        f: Array-valued field.
        z: Chart point.
        coframe: Matrix E, shape (n, n).
        diff: Derivative settings.
        analytic_partials: Analytic partials of f for analytic mode.
        split: Number of leading (base) coframe directions.
        chart_partials: Precomputed partials, shape (n, ...), bypassing differentiation.

    Returns:
        (f_;a, f_;i) with shapes (split, ...) and (n - split, ...).

    Raises:
        SingularCoframeError: If |det E| is below the rank tolerance.
    """
    coframe = np.asarray(coframe, dtype=float)
    det = float(np.linalg.det(coframe))
    if abs(det) < RANK_TOLERANCE:
        raise SingularCoframeError(f"Coframe is singular at z (det={det:.3e})", det=det)
    df = chart_partials if chart_partials is not None else partials(f, z, diff, analytic_partials)
    flat = df.reshape(df.shape[0], -1)
    solved = np.linalg.solve(coframe.T, flat)
    scale = max(float(np.max(np.abs(flat))) if flat.size else 0.0, 1.0)
    residual = float(np.max(np.abs(coframe.T @ solved - flat))) if flat.size else 0.0
    if residual > 1e-10 * scale:
        logger.warning(f"Coframe derivative reconstruction residual {residual:.3e} exceeds 1e-10 relative")
    solved = solved.reshape(df.shape)
    return solved[:split], solved[split:]
