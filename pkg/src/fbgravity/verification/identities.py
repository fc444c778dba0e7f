"""Identity suites of the algebra and form layers, for both signatures."""

from __future__ import annotations

import logging
import time

import numpy as np

from fbgravity.algebra.identities import algebra_identity_residuals
from fbgravity.algebra.tables import DIM_P, SignatureKind, build_algebra
from fbgravity.forms.derivative import DiffConfig, DiffMode
from fbgravity.forms.maurer_cartan import AffineGroupField, maurer_cartan_identities, structure_equation_residual
from fbgravity.forms.notation import notation_identity_residuals
from fbgravity.forms.valued import PolynomialFormField, coadjoint_lemma_residual, transport_corollary_residual
from fbgravity.scenarios.sampling import sample_fiber
from fbgravity.shared.observability.metrics import MetricsCollector, create_metrics_collector
from fbgravity.verification.report import FamilyAccumulator, Report

logger = logging.getLogger(__name__)

# Form-level checks run on a small chart to keep finite differences cheap.
LEMMA_CHART_DIM = 5

IDENTITY_TOLERANCES = {
    "algebra": 1e-12,
    "notation": 1e-12,
    "maurer_cartan": 1e-8,
    "coadjoint_lemma": 1e-6,
    "transport_corollary": 1e-6,
}

# Exact table identities; the randomized action families keep the "algebra" entry.
ALGEBRA_TABLE_TOLERANCES = {
    "a86": 1e-13,
    "a87": 1e-13,
    "a88": 1e-13,
    "jacobi": 1e-13,
    "bracket_g": 1e-13,
    "bracket_p": 1e-13,
    "generator_antisymmetry": 1e-13,
    "kappa": 1e-13,
}

DEFAULT_DRAWS = 1000
DEFAULT_FIBER_POINTS = 100
DEFAULT_LEMMA_DRAWS = 50


def identity_tolerance(family: str) -> float:
    prefix, _, rest = family.partition(".")
    if prefix == "algebra":
        return ALGEBRA_TABLE_TOLERANCES.get(rest.rpartition(".")[2], IDENTITY_TOLERANCES["algebra"])
    return IDENTITY_TOLERANCES[prefix]


def run_identity_suite(
    seed: int = 0,
    draws: int = DEFAULT_DRAWS,
    fiber_points: int = DEFAULT_FIBER_POINTS,
    lemma_draws: int = DEFAULT_LEMMA_DRAWS,
    diff: DiffConfig | None = None,
    metrics: MetricsCollector | None = None,
) -> Report:
    """Run every algebra and forms identity family and collect the worst residuals.

    Args:
        seed: Seed of the single generator driving all draws.
        draws: Random draws of the algebra action identities.
        fiber_points: Fiber points of the Maurer-Cartan identities.
        lemma_draws: Random (group field, form field) pairs of the coadjoint lemma and its corollary.
        diff: Finite-difference settings.
        metrics: Collector; a fresh one when omitted.
    """
    start = time.perf_counter()
    diff = diff or DiffConfig()
    metrics = metrics or create_metrics_collector()
    rng = np.random.default_rng(seed)
    families = FamilyAccumulator(identity_tolerance)

    for kind in SignatureKind:
        tables = build_algebra(kind)
        sig = kind.value
        logger.info(f"Identity suite: {sig} algebra")
        families.observe_all(
            {f"algebra.{sig}.{name}": value for name, value in algebra_identity_residuals(tables, rng, draws).items()},
            {"signature": sig},
        )

        for _ in range(fiber_points):
            y = sample_fiber(tables, rng, 0.5)
            where = {"signature": sig, "y": y.tolist()}
            values = maurer_cartan_identities(tables, y, diff)
            values["structure_analytic"] = structure_equation_residual(tables, y, DiffConfig(DiffMode.ANALYTIC))
            families.observe_all({f"maurer_cartan.{sig}.{name}": value for name, value in values.items()}, where)

        for k in range(lemma_draws):
            z = 0.3 * rng.normal(size=LEMMA_CHART_DIM)
            where = {"signature": sig, "draw": k, "z": z.tolist()}
            g_field = AffineGroupField.random(tables, rng, LEMMA_CHART_DIM, 0.2)
            varpi = PolynomialFormField.random(rng, LEMMA_CHART_DIM, 2, (DIM_P,), 0.5)
            families.observe(f"coadjoint_lemma.{sig}", coadjoint_lemma_residual(tables, g_field, varpi, z, diff), where)
            connection = PolynomialFormField.random(rng, LEMMA_CHART_DIM, 1, (DIM_P,), 0.5)
            momentum = PolynomialFormField.random(rng, LEMMA_CHART_DIM, 3, (DIM_P,), 0.5)
            families.observe(
                f"transport_corollary.{sig}",
                transport_corollary_residual(tables, g_field, connection, momentum, z, diff),
                where,
            )

    families.observe_all(
        {f"notation.{name}": value for name, value in notation_identity_residuals(rng).items()},
        {"seed": seed},
    )

    results = families.results()
    for name, result in results.items():
        metrics.histogram(f"identity.{name}").observe(result.max_residual)
    report = Report(
        kind="identities",
        config={"seed": seed, "draws": draws, "fiber_points": fiber_points, "lemma_draws": lemma_draws},
        families=results,
        wall_time=time.perf_counter() - start,
    )
    for name in report.failing_families():
        logger.warning(f"Identity family {name} failed: {results[name].max_residual:.3e} > {results[name].tolerance:.1e}")
    logger.info(f"Identity suite finished: {report.pass_counts['passed']}/{report.pass_counts['total']} families pass")
    return report
