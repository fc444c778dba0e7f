"""Unit tests for metrics module."""

from concurrent.futures import ThreadPoolExecutor

from fbgravity.shared.observability.metrics import (
    create_metrics_collector,
    get_global_metrics_collector,
    get_metric_reader,
    reset_global_metrics_collector,
)


class TestMetricsCollector:
    """Test metrics collector."""

    def test_get_global_metrics_collector(self) -> None:
        """Test that the global collector is shared until reset."""
        collector = get_global_metrics_collector()
        assert get_global_metrics_collector() is collector
        reset_global_metrics_collector()
        assert get_global_metrics_collector() is not collector

    def test_counter(self) -> None:
        """Test counter totals."""
        collector = create_metrics_collector()
        counter = collector.counter("points_evaluated")
        counter.inc()
        counter.inc(5)
        assert collector.get_all_metrics()["counters"]["points_evaluated"] == 6.0
        assert collector.counter("points_evaluated") is counter

    def test_labelled_metrics_are_distinct(self) -> None:
        """Test that labels produce separate metric keys."""
        collector = create_metrics_collector()
        collector.counter("cases", {"signature": "lorentzian"}).inc()
        collector.counter("cases", {"signature": "euclidean"}).inc(2)
        counters = collector.get_all_metrics()["counters"]
        assert counters["cases{signature=lorentzian}"] == 1.0
        assert counters["cases{signature=euclidean}"] == 2.0

    def test_histogram(self) -> None:
        """Test histogram summaries of residual values."""
        collector = create_metrics_collector()
        histogram = collector.histogram("residual.EL_ab")
        assert histogram.get()["count"] == 0
        for value in (1e-12, 3e-12, 2e-12):
            histogram.observe(value)
        stats = histogram.get()
        assert stats["count"] == 3
        assert stats["max"] == 3e-12
        assert stats["min"] == 1e-12
        histogram.reset()
        assert histogram.get()["count"] == 0

    def test_counter_is_thread_safe(self) -> None:
        """Test concurrent increments from a worker pool."""
        counter = create_metrics_collector().counter("concurrent")
        with ThreadPoolExecutor(max_workers=4) as executor:
            list(executor.map(lambda _: counter.inc(), range(200)))
        assert counter.get() == 200.0


def test_readings_reach_the_in_memory_reader() -> None:
    """Test that OpenTelemetry sees the recorded values."""
    create_metrics_collector().counter("reader_probe").inc(3)
    data = get_metric_reader().get_metrics_data()
    names = {
        metric.name
        for resource in data.resource_metrics
        for scope in resource.scope_metrics
        for metric in scope.metrics
    }
    assert "reader_probe" in names
