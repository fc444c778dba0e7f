"""Machine-readable verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field
import json
import logging
import math
from pathlib import Path
import sys
import threading
from typing import Any

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


@dataclass
class FamilyResult:
    """Worst residual of one family over a sweep.

    Attributes:
        name: Family name.
        tolerance: Pass threshold.
        max_residual: Largest residual seen (NaN is recorded as inf).
        worst_point: Chart point (or draw label) of the largest residual.
        evaluated: Number of contributing evaluations.
    """

    name: str
    tolerance: float
    max_residual: float = 0.0
    worst_point: dict[str, Any] | None = None
    evaluated: int = 0

    @property
    def passed(self) -> bool:
        return self.evaluated > 0 and self.max_residual <= self.tolerance

    def observe(self, value: float, where: dict[str, Any] | None) -> None:
        value = float(value)
        if not math.isfinite(value):
            value = math.inf
        if self.evaluated == 0 or value > self.max_residual:
            self.max_residual = value
            self.worst_point = where
        self.evaluated += 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst_point": self.worst_point,
            "evaluated": self.evaluated,
        }


class FamilyAccumulator:
    """Thread-safe aggregation of residual families with their tolerances."""

    def __init__(self, tolerance_for):
        self._tolerance_for = tolerance_for
        self._families: dict[str, FamilyResult] = {}
        self._lock = threading.Lock()

    def observe(self, family: str, value: float, where: dict[str, Any] | None = None) -> None:
        with self._lock:
            if family not in self._families:
                self._families[family] = FamilyResult(family, self._tolerance_for(family))
            self._families[family].observe(value, where)

    def observe_all(self, values: dict[str, float], where: dict[str, Any] | None = None) -> None:
        for family, value in values.items():
            self.observe(family, value, where)

    def results(self) -> dict[str, FamilyResult]:
        with self._lock:
            return dict(sorted(self._families.items()))


@dataclass
class Report:
    """Outcome of one verification run.

    The verdict is ``pass`` iff every family is within tolerance and no point failed.
    """

    kind: str
    config: dict[str, Any]
    families: dict[str, FamilyResult]
    wall_time: float = 0.0
    point_errors: list[dict[str, Any]] = field(default_factory=list)
    observables: dict[str, Any] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.point_errors and all(result.passed for result in self.families.values())

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    @property
    def pass_counts(self) -> dict[str, int]:
        passed = sum(result.passed for result in self.families.values())
        return {"passed": passed, "total": len(self.families)}

    def failing_families(self) -> list[str]:
        return [name for name, result in self.families.items() if not result.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "config": self.config,
            "families": {name: result.to_dict() for name, result in self.families.items()},
            "pass_counts": self.pass_counts,
            "point_errors": self.point_errors,
            "observables": self.observables,
            "wall_time": self.wall_time,
            "metrics": self.metrics,
        }

    def to_json(self) -> str:
        # non-finite numbers are written as strings ("inf", "nan")
        return json.dumps(_replace_non_finite(self.to_dict()), indent=2, default=str)

    def write(self, path: str | Path | None = None) -> None:
        """Write the JSON report to ``path``, or to stdout when None."""
        text = self.to_json()
        if path is None:
            sys.stdout.write(text + "\n")
            return
        Path(path).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Report written to {path}")


def _replace_non_finite(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {key: _replace_non_finite(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_replace_non_finite(item) for item in value]
    return value
