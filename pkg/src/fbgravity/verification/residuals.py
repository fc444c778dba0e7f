"""Residual sweep of the field equations over sampled chart points."""

from __future__ import annotations

import logging
import time

import numpy as np

from fbgravity.algebra.tables import AlgebraTables, build_algebra
from fbgravity.bundle.hvdw import evaluate_point, theta_from
from fbgravity.bundle.lift import lift_diagnostics
from fbgravity.bundle.momentum import MomentumField, identification_residuals, momentum_field
from fbgravity.bundle.nabla import nabla_consistency
from fbgravity.execution.runner import PointSweepRunner
from fbgravity.forms.chart import ChartPoint
from fbgravity.forms.derivative import DiffConfig
from fbgravity.frobenius.diagnostics import check_fibration_hypotheses, lifted_field
from fbgravity.geometry.curvature import curvature, wec_density
from fbgravity.geometry.fields import FieldConfig
from fbgravity.scenarios.sampling import sample_points
from fbgravity.shared.config.config import ConfigError
from fbgravity.shared.config.models import FD_TOLERANCE, RunConfig
from fbgravity.shared.observability.metrics import MetricsCollector, create_metrics_collector
from fbgravity.verification.report import FamilyAccumulator, Report

logger = logging.getLogger(__name__)

# Always evaluated with finite differences, whatever the configured mode.
FD_FAMILIES = frozenset({"nabla_consistency"})


def family_tolerance(run: RunConfig, family: str) -> float:
    if family in run.tolerances.families or family not in FD_FAMILIES:
        return run.tolerance(family)
    return max(run.tolerance(family), FD_TOLERANCE)


def point_residuals(
    cfg: FieldConfig,
    tables: AlgebraTables,
    mom: MomentumField,
    point: ChartPoint,
    diff: DiffConfig,
) -> tuple[dict[str, float], dict[str, float]]:
    """Every residual family at one chart point, plus the observables (theta density, S).

    Raises:
        FBGravityError: On chart, coframe or derivative failures at the point.
    """
    evaluation = evaluate_point(cfg, tables, mom, point, diff)
    values = evaluation.residuals.max_abs()
    values.update(lift_diagnostics(cfg, tables, point, diff))
    values.update(identification_residuals(evaluation.lifted, mom.at(point.z), evaluation.varpi))

    theta = theta_from(evaluation.lifted, evaluation.decomposition, evaluation.varpi)
    values["theta_literal"] = abs(theta.value - theta.literal)

    S = float(curvature(cfg, point.x, diff).S)
    values["wec_density"] = abs(wec_density(cfg, point.x, diff) - S)

    fibration = check_fibration_hypotheses(tables, lifted_field(cfg, tables), point, diff)
    values["fibration_horizontal_alpha"] = fibration.horizontal_alpha if fibration.horizontal_alpha is not None else np.inf
    values["fibration_horizontal_omega"] = fibration.horizontal_omega if fibration.horizontal_omega is not None else np.inf
    values["fibration_pfaff1"] = fibration.pfaff1 if fibration.pfaff1 is not None else np.inf
    values["fibration_pfaff3"] = fibration.pfaff3 if fibration.pfaff3 is not None else np.inf

    values["nabla_consistency"] = nabla_consistency(cfg, tables, mom, point, diff)
    return values, {"theta_density": theta.value, "scalar_curvature": S}


def _summary(samples: list[float]) -> dict[str, float]:
    if not samples:
        return {}
    array = np.asarray(samples)
    return {"min": float(array.min()), "max": float(array.max()), "mean": float(array.mean()), "spread": float(np.ptp(array))}


def run_residuals(run: RunConfig, metrics: MetricsCollector | None = None) -> Report:
    """Sample chart points and evaluate every residual family at each.

    Raises:
        ConfigError: If analytic derivatives are requested from a scenario without partials.
        ScenarioError: If the scenario is unknown or its domain cannot be sampled.
    """
    start = time.perf_counter()
    metrics = metrics or create_metrics_collector()
    cfg = run.build_scenario()
    if run.analytic and not cfg.has_analytic_partials:
        raise ConfigError(f"Scenario '{cfg.name}' has no analytic partials; use diff.mode = \"finite_difference\"")
    tables = build_algebra(cfg.signature)
    diff = run.diff.to_diff_config()
    mom = momentum_field(run.momentum.profile, run.momentum.coefficients)
    box = np.asarray(run.sampling.box) if run.sampling.box is not None else None
    points = sample_points(cfg, tables, np.random.default_rng(run.seed), run.points, run.fiber_radius, box)
    logger.info(f"Residual sweep of '{cfg.name}' over {len(points)} points ({diff.mode.value}, momentum {mom.name})")

    families = FamilyAccumulator(lambda family: family_tolerance(run, family))
    points_counter = metrics.counter("points_evaluated")

    def task(point: ChartPoint) -> tuple[dict[str, float], dict[str, float]]:
        return point_residuals(cfg, tables, mom, point, diff)

    outcomes = PointSweepRunner(run.workers).run(task, points)
    point_errors: list[dict] = []
    theta: list[float] = []
    scalar: list[float] = []
    for outcome in outcomes:
        if outcome.error is not None:
            point_errors.append({"point": outcome.point.to_dict(), "error": type(outcome.error).__name__, "message": str(outcome.error)})
            continue
        values, observables = outcome.result
        # aggregated in submission order
        families.observe_all(values, outcome.point.to_dict())
        for family, value in values.items():
            metrics.histogram(f"residual.{family}").observe(value)
        points_counter.inc()
        theta.append(observables["theta_density"])
        scalar.append(observables["scalar_curvature"])

    results = families.results()
    report = Report(
        kind="residuals",
        config=run.to_dict(),
        families=results,
        wall_time=time.perf_counter() - start,
        point_errors=point_errors,
        observables={"theta_density": _summary(theta), "scalar_curvature": _summary(scalar)},
        metrics={
            "points_evaluated": points_counter.get(),
            "histograms": {name: metrics.histogram(f"residual.{name}").get() for name in results},
        },
    )
    for name in report.failing_families():
        result = results[name]
        logger.warning(f"Family {name} failed: {result.max_residual:.3e} > {result.tolerance:.1e} at {result.worst_point}")
    logger.info(f"Residual sweep verdict: {report.verdict} ({report.pass_counts['passed']}/{report.pass_counts['total']} families)")
    return report

