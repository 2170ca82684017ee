"""Randomised cross-module invariant checks behind the ``verify`` command"""

from .suite import CHECK_NAMES, CheckResult, VerificationReport, run_suite

__all__ = ["CHECK_NAMES", "CheckResult", "VerificationReport", "run_suite"]
