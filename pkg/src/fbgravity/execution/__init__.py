"""Execution of verification sweeps."""

from fbgravity.execution.runner import PointOutcome, PointSweepRunner, ResultCollector

__all__ = ["PointOutcome", "PointSweepRunner", "ResultCollector"]
