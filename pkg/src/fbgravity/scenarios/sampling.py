"""Seeded sampling of chart points inside a scenario domain."""

from __future__ import annotations

import logging

import numpy as np

from fbgravity.algebra.tables import DIM_BASE, DIM_G, AlgebraTables
from fbgravity.exceptions import DomainError
from fbgravity.forms.chart import ChartPoint
from fbgravity.geometry.fields import FieldConfig

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 10_000


def sample_fiber(tables: AlgebraTables, rng: np.random.Generator, fiber_radius: float) -> np.ndarray:
    """Uniform draw of y in the Euclidean ball of radius ``fiber_radius``, inside the chart."""
    for _ in range(MAX_ATTEMPTS):
        direction = rng.normal(size=DIM_G)
        direction /= np.linalg.norm(direction)
        y = fiber_radius * rng.uniform() ** (1.0 / DIM_G) * direction
        if np.linalg.norm(tables.g_matrix(y), 2) < 1.0:
            return y
    raise DomainError(f"Could not draw a fiber point inside the chart with radius {fiber_radius}")


def sample_points(
    cfg: FieldConfig,
    tables: AlgebraTables,
    rng: np.random.Generator,
    count: int,
    fiber_radius: float = 0.5,
    box: np.ndarray | None = None,
    max_attempts: int = MAX_ATTEMPTS,
) -> list[ChartPoint]:
    """Draw ``count`` chart points with x uniform in the box and inside the domain.

    Args:
        cfg: Scenario field configuration (domain predicate and default box).
        tables: Algebra tables (chart check for y).
        rng: Seeded generator; identical seeds give identical points.
        count: Number of points.
        fiber_radius: Radius of the y-ball.
        box: Optional (2, 4) override of the scenario box.
        max_attempts: Rejection budget per point.

    Raises:
        DomainError: If no admissible x is found within the rejection budget.
    """
    bounds = np.asarray(cfg.box if box is None else box, dtype=float).reshape(2, DIM_BASE)
    points: list[ChartPoint] = []
    for _ in range(count):
        for _attempt in range(max_attempts):
            x = rng.uniform(bounds[0], bounds[1])
            if cfg.contains(x):
                break
        else:
            raise DomainError(
                f"No admissible point of '{cfg.name}' found in box {bounds.tolist()} after {max_attempts} attempts"
            )
        points.append(ChartPoint(x, sample_fiber(tables, rng, fiber_radius)))
    logger.debug(f"Sampled {len(points)} chart points for '{cfg.name}'")
    return points
