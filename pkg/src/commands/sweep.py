"""sweep: run the κ→0 experiments of a scenario's experiment block

Author: Curved N-Body Team
License: MIT
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from ..config import AppConfig
from ..errors import EXIT_OK, AcceptanceError, ValidationError
from ..logging import get_logger, operation_context
from ..mechanics.continuation import potential_convergence, trajectory_convergence, vf_convergence
from ..mechanics.convergence import ConvergenceReport
from ..scenario import AcceptanceBlock, Experiment, Scenario, load_scenario, write_convergence_table, write_json

logger = get_logger(__name__)


def run_experiments(scenario: Scenario, config: AppConfig) -> List[ConvergenceReport]:
    """Reports of every experiment and mode listed in the experiment block

    Raises:
        ValidationError: Without an experiment block
    """
    if scenario.experiment is None:
        raise ValidationError("sweep needs a scenario with an experiment block", field="experiment")
    block = scenario.experiment
    spec = scenario.sweep_spec(config.numerics.singularity_tol)

    reports = []
    for experiment in block.experiments:
        with operation_context(f"sweep.{experiment.value}", component="cli"):
            if experiment == Experiment.VECTOR_FIELD:
                reports.extend(vf_convergence(spec, mode) for mode in block.modes)
            elif experiment == Experiment.POTENTIAL:
                reports.append(potential_convergence(spec))
            else:
                reports.append(trajectory_convergence(spec, scenario.integrator_config(t_end=block.t_end)))
    return reports


def acceptance_violations(reports: List[ConvergenceReport], acceptance: AcceptanceBlock) -> List[str]:
    """Human-readable violations of the thresholds set in the block"""
    violations = []
    for report in reports:
        name = report.name
        if report.failures and not acceptance.allow_failures:
            kappas = ", ".join(f"{row.kappa:g}" for row in report.failures)
            violations.append(f"{name}: evaluation failed for kappa in [{kappas}]")

        for side in report.sides():
            label = f"{name} (kappa {'>' if side.sign > 0 else '<'} 0)"
            slope = side.fit.slope if side.fit else None
            if acceptance.min_slope is not None or acceptance.expected_order is not None:
                if slope is None:
                    violations.append(f"{label}: no slope could be fitted")
                    continue
            if acceptance.min_slope is not None and slope < acceptance.min_slope:
                violations.append(f"{label}: slope {slope:.3f} below {acceptance.min_slope}")
            if acceptance.expected_order is not None and abs(slope - acceptance.expected_order) > acceptance.order_tolerance:
                violations.append(
                    f"{label}: slope {slope:.3f} outside {acceptance.expected_order} +/- {acceptance.order_tolerance}"
                )
            if acceptance.require_monotone and not side.monotone:
                violations.append(f"{label}: error is not monotonically decreasing")

        gap = report.slope_gap
        if acceptance.max_slope_gap is not None and gap is not None and gap > acceptance.max_slope_gap:
            violations.append(f"{name}: slopes of the two signs differ by {gap:.3f}")
    return violations


def report_document(scenario: Scenario, reports: List[ConvergenceReport], violations: List[str]) -> Dict[str, Any]:
    return {
        "scenario": scenario.name,
        "dim": scenario.dim,
        "kappas": scenario.experiment.kappa_list(),
        "reports": [report.to_dict() for report in reports],
        "acceptance": scenario.experiment.acceptance.model_dump(mode="json"),
        "violations": violations,
        "passed": not violations,
    }


def cmd_sweep(scenario_path: str, out_dir: Optional[str], config: AppConfig) -> int:
    """Run ``sweep``; files are written before acceptance is enforced

    Raises:
        AcceptanceError: If any threshold of the experiment block is violated
    """
    scenario = load_scenario(scenario_path)
    reports = run_experiments(scenario, config)
    violations = acceptance_violations(reports, scenario.experiment.acceptance)

    out = Path(out_dir) if out_dir else config.output.run_directory(scenario.name)
    for report in reports:
        write_convergence_table(out / f"{report.name}.csv", report)
    write_json(out / "convergence_report.json", report_document(scenario, reports, violations))

    for report in reports:
        slopes = ", ".join(
            f"{'+' if side.sign > 0 else '-'}: {side.fit.slope:.3f}" if side.fit else f"{'+' if side.sign > 0 else '-'}: n/a"
            for side in report.sides()
        )
        print(f"{report.name}: slopes [{slopes}] failures={len(report.failures)}")

    if violations:
        for violation in violations:
            logger.warning(violation)
        raise AcceptanceError(f"{len(violations)} acceptance threshold(s) violated", violations=violations)
    return EXIT_OK
