"""Observability - in-process metrics of verification sweeps."""

from fbgravity.shared.observability.metrics import (
    Counter,
    Histogram,
    MetricsCollector,
    create_metrics_collector,
    get_global_metrics_collector,
    get_metric_reader,
    reset_global_metrics_collector,
)

__all__ = [
    "Counter",
    "Histogram",
    "MetricsCollector",
    "create_metrics_collector",
    "get_global_metrics_collector",
    "get_metric_reader",
    "reset_global_metrics_collector",
]
