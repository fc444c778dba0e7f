"""Points of the chart R^4 x (exponential chart of the structure group)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fbgravity.algebra.actions import CHART_RADIUS
from fbgravity.algebra.tables import DIM_BASE, DIM_G, DIM_P, AlgebraTables
from fbgravity.exceptions import ChartError


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """A point (x, y) of the bundle chart; g = exp(y^i u_i).

    Attributes:
        x: Base coordinates, shape (4,).
        y: Exponential fiber coordinates, shape (6,).
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).reshape(DIM_BASE))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float).reshape(DIM_G))

    @classmethod
    def from_z(cls, z: np.ndarray) -> ChartPoint:
        z = np.asarray(z, dtype=float)
        return cls(z[:DIM_BASE], z[DIM_BASE:DIM_P])

    @property
    def z(self) -> np.ndarray:
        """Concatenated chart coordinates (x, y), shape (10,)."""
        return np.concatenate([self.x, self.y])

    def fiber_norm(self, tables: AlgebraTables) -> float:
        """Operator norm of y^i u_i."""
        return float(np.linalg.norm(tables.g_matrix(self.y), 2))

    def validate(self, tables: AlgebraTables, radius: float = CHART_RADIUS) -> None:
        """Raise ChartError if y lies outside the exponential chart."""
        norm = self.fiber_norm(tables)
        if norm >= radius:
            raise ChartError(f"Chart point outside exponential chart: |y.u| = {norm:.4f} >= {radius}")

    def to_dict(self) -> dict[str, list[float]]:
        return {"x": self.x.tolist(), "y": self.y.tolist()}
