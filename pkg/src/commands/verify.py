"""verify: run the invariant suite and report pass/fail per check

Author: Curved N-Body Team
License: MIT
"""

from pathlib import Path
from typing import Optional

from ..config import AppConfig
from ..errors import EXIT_ACCEPTANCE, EXIT_OK
from ..logging import operation_context
from ..scenario import write_json
from ..verification import run_suite


def cmd_verify(
    config: AppConfig,
    out_dir: Optional[str] = None,
    seed: Optional[int] = None,
    checked: bool = False,
) -> int:
    """Exit 0 when every check passes, 2 otherwise"""
    settings = config.verification
    seed = settings.seed if seed is None else seed
    with operation_context("verify", component="cli", seed=seed):
        report = run_suite(
            seed=seed,
            samples=settings.samples,
            gradient_samples=settings.gradient_samples,
            checked=checked or settings.checked,
            rel_step=config.numerics.fd_rel_step,
        )

    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: worst={check.worst_error:.3e} tol={check.tolerance:.1e} cases={check.cases}")
        if not check.passed and check.detail:
            print(f"     {check.detail}")

    if out_dir:
        write_json(Path(out_dir) / "verify_report.json", report.to_dict())
    return EXIT_OK if report.passed else EXIT_ACCEPTANCE
