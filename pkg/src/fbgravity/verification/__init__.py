"""Verification suites and their reports."""

from fbgravity.verification.gauge_suite import run_gauge_suite
from fbgravity.verification.identities import run_identity_suite
from fbgravity.verification.report import FamilyAccumulator, FamilyResult, Report
from fbgravity.verification.residuals import point_residuals, run_residuals

__all__ = [
    "FamilyAccumulator",
    "FamilyResult",
    "Report",
    "point_residuals",
    "run_gauge_suite",
    "run_identity_suite",
    "run_residuals",
]
