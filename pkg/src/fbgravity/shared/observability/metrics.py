"""In-process sweep metrics on top of OpenTelemetry.

Readings stay in an ``InMemoryMetricReader``; nothing is exported to stdout, which
carries the report.
"""

import logging
import threading
from typing import Any

from opentelemetry import metrics
from opentelemetry.metrics import MeterProvider
from opentelemetry.sdk.metrics import MeterProvider as SDKMeterProvider
from opentelemetry.sdk.metrics.export import InMemoryMetricReader
from opentelemetry.sdk.resources import Resource

logger = logging.getLogger(__name__)

METER_NAME = "fbgravity"

_meter_provider: MeterProvider | None = None
_metric_reader: InMemoryMetricReader | None = None
_provider_lock = threading.Lock()


def _get_meter_provider() -> MeterProvider:
    """Get or create the meter provider backed by an in-memory reader."""
    global _meter_provider, _metric_reader
    with _provider_lock:
        if _meter_provider is None:
            _metric_reader = InMemoryMetricReader()
            _meter_provider = SDKMeterProvider(
                resource=Resource.create({"service.name": METER_NAME}),
                metric_readers=[_metric_reader],
            )
            metrics.set_meter_provider(_meter_provider)
        return _meter_provider


def get_metric_reader() -> InMemoryMetricReader:
    """The in-memory reader attached to the meter provider."""
    _get_meter_provider()
    assert _metric_reader is not None
    return _metric_reader


class Counter:
    """OpenTelemetry counter that also keeps its running total."""

    def __init__(self, name: str, labels: dict[str, str] | None = None):
        self.name = name
        self.labels = labels or {}
        meter = _get_meter_provider().get_meter(METER_NAME)
        self._counter = meter.create_counter(name, description=f"Counter: {name}")
        self._value = 0.0
        self._lock = threading.Lock()

    def inc(self, value: float = 1.0) -> None:
        """Increment counter by value.

        Args:
            value: Value to increment by (default: 1.0).
        """
        self._counter.add(value, attributes=self.labels)
        with self._lock:
            self._value += value

    def get(self) -> float:
        with self._lock:
            return self._value


class Histogram:
    """OpenTelemetry histogram with a local summary of the recorded values."""

    def __init__(self, name: str, labels: dict[str, str] | None = None):
        self.name = name
        self.labels = labels or {}
        meter = _get_meter_provider().get_meter(METER_NAME)
        self._histogram = meter.create_histogram(name, description=f"Histogram: {name}")
        self._values: list[float] = []
        self._lock = threading.Lock()

    def observe(self, value: float) -> None:
        """Record a value in the histogram.

        Args:
            value: Value to record.
        """
        self._histogram.record(value, attributes=self.labels)
        with self._lock:
            self._values.append(value)

    def get(self) -> dict[str, Any]:
        """Get histogram statistics.

        Returns:
            Dictionary with count, sum, min, max, avg.
        """
        with self._lock:
            values = list(self._values)
        if not values:
            return {"count": 0, "sum": 0.0, "min": 0.0, "max": 0.0, "avg": 0.0}
        return {
            "count": len(values),
            "sum": sum(values),
            "min": min(values),
            "max": max(values),
            "avg": sum(values) / len(values),
        }

    def reset(self) -> None:
        with self._lock:
            self._values.clear()


class MetricsCollector:
    """Collector for managing metrics."""

    def __init__(self):
        self._counters: dict[str, Counter] = {}
        self._histograms: dict[str, Histogram] = {}
        self._lock = threading.Lock()

    def counter(self, name: str, labels: dict[str, str] | None = None) -> Counter:
        """Get or create a counter.

        Args:
            name: Metric name.
            labels: Optional labels.

        Returns:
            Counter instance.
        """
        key = self._metric_key(name, labels)
        with self._lock:
            if key not in self._counters:
                self._counters[key] = Counter(name, labels)
            return self._counters[key]

    def histogram(self, name: str, labels: dict[str, str] | None = None) -> Histogram:
        """Get or create a histogram.

        Args:
            name: Metric name.
            labels: Optional labels.

        Returns:
            Histogram instance.
        """
        key = self._metric_key(name, labels)
        with self._lock:
            if key not in self._histograms:
                self._histograms[key] = Histogram(name, labels)
            return self._histograms[key]

    def get_all_metrics(self) -> dict[str, Any]:
        """Get all metrics as dictionary.

        Returns:
            Dictionary with counters and histograms.
        """
        with self._lock:
            counters = dict(self._counters)
            histograms = dict(self._histograms)
        return {
            "counters": {key: counter.get() for key, counter in counters.items()},
            "histograms": {key: histogram.get() for key, histogram in histograms.items()},
        }

    def _metric_key(self, name: str, labels: dict[str, str] | None) -> str:
        if not labels:
            return name
        label_str = ",".join(f"{k}={v}" for k, v in sorted(labels.items()))
        return f"{name}{{{label_str}}}"


_global_metrics_collector: MetricsCollector | None = None
_collector_lock = threading.Lock()


def create_metrics_collector() -> MetricsCollector:
    """Create a new metrics collector instance."""
    return MetricsCollector()


def get_global_metrics_collector() -> MetricsCollector:
    """Get or create global metrics collector.

    Returns:
        Global MetricsCollector instance.
    """
    global _global_metrics_collector
    with _collector_lock:
        if _global_metrics_collector is None:
            _global_metrics_collector = MetricsCollector()
        return _global_metrics_collector


def reset_global_metrics_collector() -> None:
    """Drop the global collector (useful for testing)."""
    global _global_metrics_collector
    with _collector_lock:
        _global_metrics_collector = None
