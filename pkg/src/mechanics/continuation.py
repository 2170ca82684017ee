"""Curvature Continuation Experiments

Sweeps over signed κ → 0 comparing the curved systems with the flat
Newtonian one: vector fields at matched states, potentials under fixed
chords, and whole trajectories.

Two comparison modes are supported. ``same-chart-tuple`` evaluates every
κ at the identical numeric chart tuple. ``chord-fixed`` holds the chords
from the North Pole fixed and maps them to s = 2 asn_κ(τ/2) per κ.

Author: Curved N-Body Team
License: MIT
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from ..errors import CurvedNBodyError, IntegrationError, InvalidInputError, ValidationError
from ..logging import get_logger, operation_context
from .convergence import ConvergenceReport, ConvergenceRow, build_report, error_norm
from .dynamics import SystemState, curved_vector_field, rhs_curved
from .geometry import (
    ChartPoint,
    ChordalPoint,
    ManifoldSpec,
    chart_to_extrinsic,
    chordal_distance,
    chordal_to_chart,
    geodesic_to_chord,
)
from .integrate import IntegratorConfig, Trajectory, integrate, regularity_check
from .ktrig import csn
from .potentials import SINGULARITY_TOL, CotangentPotential, Potential, potential_continuity

logger = get_logger(__name__)


class SweepMode(str, Enum):
    SAME_CHART_TUPLE = "same-chart-tuple"
    CHORD_FIXED = "chord-fixed"


class VelocityConvention(str, Enum):
    """What chord-fixed sweeps hold constant for the radial velocity

    ``chart`` keeps ṡ numerically fixed; ``chordal`` keeps τ̇ fixed with
    ṡ = τ̇ / csn_κ(s/2).
    """

    CHART = "chart"
    CHORDAL = "chordal"


@dataclass
class SweepSpec:
    """Base scenario and κ list of a continuation sweep"""

    kappas: List[float]
    masses: List[float]
    chordal: List[ChordalPoint]
    velocities: np.ndarray
    mode: SweepMode = SweepMode.CHORD_FIXED
    velocity_convention: VelocityConvention = VelocityConvention.CHART
    potential: Potential = field(default_factory=CotangentPotential)
    singularity_tol: float = SINGULARITY_TOL

    def __post_init__(self):
        self.mode = SweepMode(self.mode)
        self.velocity_convention = VelocityConvention(self.velocity_convention)
        self.kappas = [float(k) for k in self.kappas]
        if not self.kappas:
            raise ValidationError("sweep needs at least one curvature", field="kappas")
        if any(k == 0 for k in self.kappas):
            raise ValidationError("sweep curvatures must be nonzero", field="kappas", value=self.kappas)
        if len(set(self.kappas)) != len(self.kappas):
            raise ValidationError("sweep curvatures must be distinct", field="kappas", value=self.kappas)
        if len(self.masses) != len(self.chordal):
            raise ValidationError(
                f"{len(self.masses)} masses for {len(self.chordal)} bodies", field="masses"
            )
        self.velocities = np.atleast_2d(np.asarray(self.velocities, dtype=float))
        if self.velocities.shape != (len(self.chordal), self.dim):
            raise ValidationError(
                f"velocities must have shape ({len(self.chordal)}, {self.dim})",
                field="velocities",
                value=self.velocities.shape,
            )

    @property
    def dim(self) -> int:
        return 2 if self.chordal[0].theta is None else 3


def _tuple(p: ChordalPoint) -> np.ndarray:
    return ChartPoint(p.tau, p.phi, p.theta).as_array()


def mapped_positions(spec: SweepSpec, kappa: float, mode: Optional[SweepMode] = None) -> np.ndarray:
    """Chart positions of the base scenario at curvature κ

    Raises:
        DomainError: If a chord exceeds the sphere's diameter
    """
    mode = SweepMode(mode or spec.mode)
    if mode == SweepMode.SAME_CHART_TUPLE or kappa == 0:
        return np.array([_tuple(p) for p in spec.chordal])
    return np.array([chordal_to_chart(kappa, p).as_array() for p in spec.chordal])


def mapped_velocities(spec: SweepSpec, kappa: float, positions: np.ndarray, mode: Optional[SweepMode] = None) -> np.ndarray:
    """Chart velocities at κ under the sweep's velocity convention"""
    mode = SweepMode(mode or spec.mode)
    velocities = spec.velocities.copy()
    if mode == SweepMode.CHORD_FIXED and spec.velocity_convention == VelocityConvention.CHORDAL:
        velocities[:, 0] = spec.velocities[:, 0] / csn(kappa, 0.5 * positions[:, 0])
    return velocities


def initial_state(spec: SweepSpec, kappa: float, mode: Optional[SweepMode] = None) -> SystemState:
    positions = mapped_positions(spec, kappa, mode)
    return SystemState(0.0, positions, mapped_velocities(spec, kappa, positions, mode))


def pole_chords(dim: int, kappa: float, positions: np.ndarray) -> np.ndarray:
    """Chordal distance from the North Pole to every body"""
    m = ManifoldSpec(dim, kappa)
    chords = []
    for q in positions:
        body = ChartPoint.from_array(q)
        pole = ChartPoint(0.0, body.phi, body.theta)
        chords.append(chordal_distance(chart_to_extrinsic(m, pole), chart_to_extrinsic(m, body)))
    return np.array(chords)


def chord_fixed_consistency(spec: SweepSpec) -> float:
    """Largest deviation of the pole chords of the mapped configurations

    Measured across the κ list against the base chords τ_r.
    """
    target = np.array([p.tau for p in spec.chordal])
    worst = 0.0
    for kappa in spec.kappas:
        positions = mapped_positions(spec, kappa, SweepMode.CHORD_FIXED)
        worst = max(worst, float(np.max(np.abs(pole_chords(spec.dim, kappa, positions) - target))))
    return worst


def _error_row(kappa: float, error: CurvedNBodyError) -> ConvergenceRow:
    logger.warning(f"sweep entry kappa={kappa} failed: {error.message}", error_code=error.error_code)
    return ConvergenceRow(kappa, None, error.error_code, error.message)


def vf_convergence(spec: SweepSpec, mode: Optional[SweepMode] = None) -> ConvergenceReport:
    """E(κ) = max|F_κ − F_0| of the hand-coded vector field over the κ list

    Failing κ entries become error rows and are excluded from the fit.

    Raises:
        CurvedNBodyError: If the flat reference state itself is singular
    """
    mode = SweepMode(mode or spec.mode)
    reference = initial_state(spec, 0.0, mode)
    f_zero = rhs_curved(reference, spec.masses, 0.0, spec.potential)

    rows = []
    for kappa in spec.kappas:
        with operation_context("vf_convergence", component="continuation", kappa=kappa, mode=mode.value):
            try:
                state = initial_state(spec, kappa, mode)
                f_kappa = rhs_curved(state, spec.masses, kappa, spec.potential)
                rows.append(ConvergenceRow(kappa, error_norm(f_kappa, f_zero)))
            except CurvedNBodyError as e:
                rows.append(_error_row(kappa, e))

    metadata = {"velocity_convention": spec.velocity_convention.value}
    if mode == SweepMode.CHORD_FIXED:
        try:
            metadata["chord_consistency"] = chord_fixed_consistency(spec)
        except CurvedNBodyError as e:
            metadata["chord_consistency"] = None
            logger.warning(f"chord consistency unavailable: {e.message}")
    return build_report("vector_field", rows, mode=mode.value, **metadata)


def potential_convergence(spec: SweepSpec) -> ConvergenceReport:
    """|U_κ − U_0| under fixed chords; see potential_continuity"""
    return potential_continuity(
        spec.chordal, spec.masses, spec.kappas, spec.dim, spec.singularity_tol
    )


def chordal_state_vector(kappa: float, state: SystemState) -> np.ndarray:
    """(τ, angles, τ̇, angle rates) of every body, for comparisons in chordal units"""
    positions = state.positions.copy()
    velocities = state.velocities.copy()
    s = positions[:, 0]
    positions[:, 0] = [geodesic_to_chord(kappa, v) for v in s]
    velocities[:, 0] = csn(kappa, 0.5 * s) * velocities[:, 0]
    return np.concatenate([positions.ravel(), velocities.ravel()])


def trajectory_deviation(kappa: float, curved: Trajectory, flat: Trajectory) -> float:
    """Max over samples of the chordal-unit deviation from the flat trajectory

    Raises:
        InvalidInputError: If the sample times differ
    """
    if len(curved.times) != len(flat.times) or not np.allclose(curved.times, flat.times, rtol=0.0, atol=1e-12):
        raise InvalidInputError("trajectories are sampled at different times")
    return max(
        error_norm(chordal_state_vector(kappa, a), chordal_state_vector(0.0, b))
        for a, b in zip(curved.states, flat.states)
    )


def _run(spec: SweepSpec, kappa: float, cfg: IntegratorConfig) -> Trajectory:
    manifold = ManifoldSpec(spec.dim, kappa)
    return integrate(
        curved_vector_field(manifold, spec.masses, spec.potential),
        initial_state(spec, kappa, SweepMode.CHORD_FIXED),
        cfg,
        regularity_check(manifold, spec.masses, singularity_tol=spec.singularity_tol),
    )


def trajectory_convergence(spec: SweepSpec, cfg: IntegratorConfig) -> ConvergenceReport:
    """Deviation of the κ trajectories from the Newtonian one

    Initial states use the chord-fixed mapping. Runs that end early are
    reported per κ and excluded from the fit.

    Raises:
        ValidationError: For an adaptive integrator, whose sample times
            would not line up across κ
        IntegrationError: If the Newtonian reference run ends early
    """
    if not cfg.fixed_step:
        raise ValidationError(
            "trajectory convergence needs the fixed-step rk4 integrator",
            field="integrator.method",
            value=cfg.method.value,
        )

    flat = _run(spec, 0.0, cfg)
    if not flat.completed:
        raise IntegrationError(f"Newtonian reference run ended early: {flat.message}", t=flat.times[-1])

    rows = []
    for kappa in spec.kappas:
        with operation_context("trajectory_convergence", component="continuation", kappa=kappa):
            try:
                curved = _run(spec, kappa, cfg)
            except CurvedNBodyError as e:
                rows.append(_error_row(kappa, e))
                continue
            if not curved.completed:
                logger.warning(f"trajectory at kappa={kappa} ended early: {curved.message}")
                rows.append(ConvergenceRow(kappa, None, curved.reason.value, curved.message))
                continue
            rows.append(ConvergenceRow(kappa, trajectory_deviation(kappa, curved, flat)))

    return build_report(
        "trajectory",
        rows,
        t_end=cfg.t_end,
        dt=cfg.dt,
        samples=len(flat.times),
        velocity_convention=spec.velocity_convention.value,
    )


def sweep_modes(spec: SweepSpec) -> List[ConvergenceReport]:
    """Vector-field reports for both comparison modes"""
    return [vf_convergence(spec, mode) for mode in SweepMode]
