"""Point-sweep runner over a thread pool."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import threading
from typing import Callable, Generic, Sequence, TypeVar

from fbgravity.exceptions import FBGravityError

logger = logging.getLogger(__name__)

P = TypeVar("P")
R = TypeVar("R")


@dataclass(frozen=True)
class PointOutcome(Generic[P, R]):
    """Result of one task; ``error`` is set instead of ``result`` when the task raised."""

    index: int
    point: P
    result: R | None = None
    error: FBGravityError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


class ResultCollector(Generic[P, R]):
    """Lock-protected collector that hands results back in submission order."""

    def __init__(self, size: int):
        self._slots: list[PointOutcome[P, R] | None] = [None] * size
        self._lock = threading.Lock()

    def put(self, outcome: PointOutcome[P, R]) -> None:
        with self._lock:
            self._slots[outcome.index] = outcome

    def outcomes(self) -> list[PointOutcome[P, R]]:
        with self._lock:
            missing = [i for i, slot in enumerate(self._slots) if slot is None]
            if missing:
                raise RuntimeError(f"Sweep incomplete, missing points {missing}")
            return list(self._slots)  # type: ignore[arg-type]


class PointSweepRunner:
    """Evaluate a task at every point, sequentially or on a thread pool.

    Engine errors (``FBGravityError``) are recorded per point; anything else propagates.
    """

    def __init__(self, max_workers: int = 1):
        if max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {max_workers}")
        self.max_workers = max_workers

    def run(self, task: Callable[[P], R], points: Sequence[P]) -> list[PointOutcome[P, R]]:
        collector: ResultCollector[P, R] = ResultCollector(len(points))

        def evaluate(index: int, point: P) -> None:
            try:
                collector.put(PointOutcome(index, point, result=task(point)))
            except FBGravityError as e:
                logger.warning(f"Point {index} failed: {e}")
                collector.put(PointOutcome(index, point, error=e))

        if self.max_workers == 1 or len(points) <= 1:
            for index, point in enumerate(points):
                evaluate(index, point)
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                futures = [executor.submit(evaluate, index, point) for index, point in enumerate(points)]
                for future in futures:
                    future.result()
        outcomes = collector.outcomes()
        logger.debug(f"Sweep of {len(points)} points finished ({sum(not o.ok for o in outcomes)} failed)")
        return outcomes
