"""Gauge-covariance and momentum-shift checks over seeded random gauge maps."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import time

import numpy as np

from fbgravity.algebra.tables import AlgebraTables, SignatureKind, build_algebra
from fbgravity.bundle.gauge import (
    GaugeMap,
    ShiftField,
    admissible_shift,
    covariance_residuals,
    gauge_conjugation_residuals,
    head_preservation_residual,
    momentum_shift_check,
)
from fbgravity.bundle.momentum import MomentumField, momentum_field
from fbgravity.execution.runner import PointSweepRunner
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import DiffConfig
from fbgravity.geometry.fields import FieldConfig
from fbgravity.scenarios.registry import get_scenario_registry
from fbgravity.scenarios.sampling import sample_points
from fbgravity.shared.config.models import FD_TOLERANCE, RunConfig
from fbgravity.shared.observability.metrics import MetricsCollector, create_metrics_collector
from fbgravity.verification.report import FamilyAccumulator, Report

logger = logging.getLogger(__name__)

GAUGE_SCALE = 0.1
GAUGE_FIBER_RADIUS = 0.3
GAUGE_TOLERANCES = {"head_preservation": 1e-10, "theta_invariance": 1e-7}

FLAT_BACKGROUNDS = {SignatureKind.LORENTZIAN: "flat_lorentzian", SignatureKind.EUCLIDEAN: "flat_euclidean"}


@dataclass(frozen=True, eq=False)
class GaugeCase:
    """One draw: a gauge map at a scenario point, and a shift on the flat background."""

    index: int
    point: ChartPoint
    gauge: GaugeMap
    flat_point: ChartPoint
    shift: ShiftField


def gauge_tolerance(run: RunConfig, family: str) -> float:
    if family in run.tolerances.families:
        return run.tolerances.families[family]
    if family in GAUGE_TOLERANCES:
        return GAUGE_TOLERANCES[family]
    return max(run.tolerance(family), FD_TOLERANCE)


def gauge_case_residuals(
    cfg: FieldConfig,
    flat: FieldConfig,
    tables: AlgebraTables,
    mom: MomentumField,
    case: GaugeCase,
    diff: DiffConfig,
) -> dict[str, float]:
    """All gauge families for one draw.

    Raises:
        FBGravityError: If a matched point leaves the chart or a coframe degenerates.
    """
    values = {"head_preservation": head_preservation_residual(tables, case.gauge.element(case.point.x))}
    values.update(gauge_conjugation_residuals(cfg, case.gauge, case.point.x, diff))
    values.update(covariance_residuals(cfg, tables, mom, case.gauge, case.point, diff))
    shift = momentum_shift_check(flat, tables, mom, case.shift, case.flat_point, diff)
    values["momentum_shift_identity"] = shift.identity_residual
    values["momentum_shift_closure"] = shift.closure
    values["momentum_shift_horizontal"] = shift.horizontal
    return values


def run_gauge_suite(run: RunConfig, metrics: MetricsCollector | None = None) -> Report:
    """Draw ``run.points`` gauge maps and shifts and collect the worst residual of each family.

    Raises:
        ScenarioError: If the scenario is unknown or its domain cannot be sampled.
    """
    start = time.perf_counter()
    metrics = metrics or create_metrics_collector()
    cfg = run.build_scenario()
    kind = SignatureKind(cfg.signature)
    flat = get_scenario_registry().build(FLAT_BACKGROUNDS[kind])
    tables = build_algebra(kind)
    diff = run.diff.to_diff_config().as_finite_difference()
    mom = momentum_field(run.momentum.profile, run.momentum.coefficients)

    rng = np.random.default_rng(run.seed)
    radius = min(run.fiber_radius, GAUGE_FIBER_RADIUS)
    box = np.asarray(run.sampling.box) if run.sampling.box is not None else None
    points = sample_points(cfg, tables, rng, run.points, radius, box)
    flat_points = sample_points(flat, tables, rng, run.points, radius)
    extent = float(np.max(np.abs(cfg.box if box is None else box)))
    cases = [
        GaugeCase(k, points[k], GaugeMap.random(tables, rng, GAUGE_SCALE, extent), flat_points[k], admissible_shift(tables, rng))
        for k in range(run.points)
    ]
    logger.info(f"Gauge suite of '{cfg.name}' over {len(cases)} random gauge maps")

    outcomes = PointSweepRunner(run.workers).run(lambda case: gauge_case_residuals(cfg, flat, tables, mom, case, diff), cases)
    families = FamilyAccumulator(lambda family: gauge_tolerance(run, family))
    counter = metrics.counter("gauge_cases_evaluated")
    point_errors = []
    for outcome in outcomes:
        where = {"case": outcome.point.index, **outcome.point.point.to_dict()}
        if outcome.error is not None:
            point_errors.append({"point": where, "error": type(outcome.error).__name__, "message": str(outcome.error)})
            continue
        families.observe_all(outcome.result, where)
        for family, value in outcome.result.items():
            metrics.histogram(f"gauge.{family}").observe(value)
        counter.inc()

    results = families.results()
    report = Report(
        kind="gauge-check",
        config=run.to_dict(),
        families=results,
        wall_time=time.perf_counter() - start,
        point_errors=point_errors,
        metrics={
            "gauge_cases_evaluated": counter.get(),
            "histograms": {name: metrics.histogram(f"gauge.{name}").get() for name in results},
        },
    )
    for name in report.failing_families():
        result = results[name]
        logger.warning(f"Gauge family {name} failed: {result.max_residual:.3e} > {result.tolerance:.1e} at {result.worst_point}")
    logger.info(f"Gauge suite verdict: {report.verdict}")
    return report
