"""simulate: integrate one scenario and write its trajectory

Author: Curved N-Body Team
License: MIT
"""

import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..config import AppConfig
from ..errors import EXIT_OK, EXIT_SINGULARITY
from ..logging import get_logger, operation_context
from ..mechanics.dynamics import SystemState, angular_momentum, cross_check_rhs, curved_vector_field, energy
from ..mechanics.integrate import Trajectory, integrate, regularity_check
from ..mechanics.potentials import Potential
from ..scenario import PositionConvention, Scenario, load_scenario, trajectory_columns, write_json, write_table

logger = get_logger(__name__)


def _relative_drift(values: List[float]) -> float:
    """max |v − v₀| / |v₀|, absolute when v₀ = 0"""
    v0 = values[0]
    deviation = max(abs(v - v0) for v in values)
    return deviation / abs(v0) if v0 != 0 else deviation


def trajectory_rows(
    trajectory: Trajectory, masses: List[float], kappa: float, potential: Potential
) -> np.ndarray:
    """One row per sample: t, per-body positions and velocities, E, L_z"""
    rows = []
    for state in trajectory.states:
        row = [state.t]
        for q, v in zip(state.positions, state.velocities):
            row.extend(q.tolist())
            row.extend(v.tolist())
        row.append(energy(state, masses, kappa, potential))
        row.append(angular_momentum(state, masses, kappa))
        rows.append(row)
    return np.array(rows)


def _initial_summary(scenario: Scenario, state: SystemState) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "position_convention": scenario.position_convention.value,
        "chart_positions": state.positions.tolist(),
        "chart_velocities": state.velocities.tolist(),
    }
    if scenario.position_convention == PositionConvention.CHORDAL:
        data["chordal_positions"] = [
            [p.tau, p.phi] + ([p.theta] if p.theta is not None else []) for p in scenario.chordal_points()
        ]
    return data


def simulate(scenario: Scenario, config: AppConfig, checked: bool = False) -> Dict[str, Any]:
    """Integrate a scenario

    Returns:
        Dict with ``trajectory``, ``rows``, ``summary`` and ``wall_time``

    Raises:
        ChartSingularityError: If the initial state is on a chart degeneracy
        SingularConfigurationError: If the initial configuration is singular
        OracleCheckError: In checked mode, if the hand-coded field disagrees
            with the general engine at a sampled state
    """
    numerics = config.numerics
    manifold = scenario.manifold_spec()
    masses = scenario.masses
    potential = scenario.potential_strategy(numerics.singularity_tol)
    initial = scenario.initial_state()
    cfg = scenario.integrator_config()

    event_check = regularity_check(manifold, masses, numerics.chart_tol, numerics.singularity_tol)
    event_check(initial)

    started = time.perf_counter()
    trajectory = integrate(
        curved_vector_field(manifold, masses, potential, numerics.chart_tol), initial, cfg, event_check
    )
    wall_time = time.perf_counter() - started

    oracle_worst: Optional[float] = None
    if checked:
        oracle_worst = max(
            cross_check_rhs(state, masses, manifold.kappa, potential, rel_step=numerics.fd_rel_step)
            for state in trajectory.states
        )

    rows = trajectory_rows(trajectory, masses, manifold.kappa, potential)
    energies = rows[:, -2].tolist()
    momenta = rows[:, -1].tolist()
    summary = {
        "scenario": scenario.name,
        "dim": manifold.dim,
        "kappa": manifold.kappa,
        "potential": scenario.potential,
        "masses": masses,
        "integrator": {
            "method": cfg.method.value,
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "stride": cfg.stride,
        },
        "initial": _initial_summary(scenario, initial),
        "termination": trajectory.reason.value,
        "termination_message": trajectory.message,
        "samples": len(trajectory.times),
        "accepted_steps": trajectory.accepted_steps,
        "rejected_steps": trajectory.rejected_steps,
        "t_final": trajectory.times[-1],
        "energy_initial": energies[0],
        "energy_final": energies[-1],
        "energy_drift": _relative_drift(energies),
        "angular_momentum_initial": momenta[0],
        "angular_momentum_final": momenta[-1],
        "angular_momentum_drift": _relative_drift(momenta),
        "checked": checked,
        "oracle_max_difference": oracle_worst,
    }
    return {"trajectory": trajectory, "rows": rows, "summary": summary, "wall_time": wall_time}


def write_outputs(result: Dict[str, Any], out_dir: Path) -> None:
    """trajectory.csv, summary.json and timing.json"""
    trajectory: Trajectory = result["trajectory"]
    state = trajectory.states[0]
    write_table(out_dir / "trajectory.csv", trajectory_columns(state.n_bodies, state.dim), result["rows"])
    write_json(out_dir / "summary.json", result["summary"])
    write_json(out_dir / "timing.json", {"wall_time_seconds": result["wall_time"]})


def cmd_simulate(
    scenario_path: str, out_dir: Optional[str], config: AppConfig, checked: bool = False
) -> int:
    """Run ``simulate``; exit 3 when the run stops at a singularity event"""
    scenario = load_scenario(scenario_path)
    with operation_context("simulate", component="cli", scenario=scenario.name):
        result = simulate(scenario, config, checked or config.verification.checked)
        write_outputs(result, Path(out_dir) if out_dir else config.output.run_directory(scenario.name))

    summary = result["summary"]
    logger.info(
        f"simulation {summary['termination']} at t={summary['t_final']:.6g}",
        energy_drift=summary["energy_drift"],
        angular_momentum_drift=summary["angular_momentum_drift"],
    )
    print(
        f"{summary['termination']}: t={summary['t_final']:.6g} samples={summary['samples']} "
        f"|dE/E0|={summary['energy_drift']:.3e} |dLz/Lz0|={summary['angular_momentum_drift']:.3e}"
    )
    if summary["termination"] != "completed":
        print(f"stopped: {summary['termination_message']}")
        return EXIT_SINGULARITY
    return EXIT_OK
