"""Explicit Runge-Kutta Integration

Classic fixed-step RK4 and the embedded Runge-Kutta-Fehlberg 4(5) pair
with step-size control. Every candidate step is checked before it is
accepted; a chart degeneracy or a singular configuration terminates the
run with the last good state. A step that overflows to a non-finite
state stops the run with its own termination reason.

Author: Curved N-Body Team
License: MIT
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..errors import CurvedNBodyError, IntegrationError, SingularConfigurationError, ValidationError
from ..logging import get_logger
from .dynamics import SystemState, check_state_regular
from .geometry import CHART_TOL, ManifoldSpec
from .potentials import SINGULARITY_TOL, BodySystem, detect_singularities

logger = get_logger(__name__)

FlatField = Callable[[float, np.ndarray], np.ndarray]
EventCheck = Callable[[SystemState], None]


class IntegratorMethod(str, Enum):
    """Integration scheme"""

    RK4 = "rk4"
    RK45 = "rk45-adaptive"


class TerminationReason(str, Enum):
    """Why an integration stopped"""

    COMPLETED = "completed"
    SINGULARITY_EVENT = "singularity-event"
    NON_FINITE_STATE = "non-finite-state"
    STEP_UNDERFLOW = "step-underflow"


# Runge-Kutta-Fehlberg 4(5) tableau
RKF45_C = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])
RKF45_A = [
    [],
    [1 / 4],
    [3 / 32, 9 / 32],
    [1932 / 2197, -7200 / 2197, 7296 / 2197],
    [439 / 216, -8.0, 3680 / 513, -845 / 4104],
    [-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40],
]
RKF45_B4 = np.array([25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0])
# fifth-order minus fourth-order weights
RKF45_ERR = np.array([1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55])

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


@dataclass
class IntegratorConfig:
    """Integration settings

    ``dt`` is the fixed step for RK4 and the initial step for the adaptive
    pair. ``stride`` keeps every stride-th accepted step in the trajectory.
    """

    t_end: float
    method: IntegratorMethod = IntegratorMethod.RK4
    dt: float = 1e-3
    atol: float = 1e-10
    rtol: float = 1e-10
    dt_min: float = 1e-12
    dt_max: float = 0.1
    stride: int = 1
    max_steps: int = 10_000_000

    def __post_init__(self):
        self.method = IntegratorMethod(self.method)
        positive = {
            "t_end": self.t_end,
            "dt": self.dt,
            "atol": self.atol,
            "rtol": self.rtol,
            "dt_min": self.dt_min,
            "dt_max": self.dt_max,
        }
        for name, value in positive.items():
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"integrator {name} must be positive, got {value}", field=name, value=value)
        if self.dt_min > self.dt_max:
            raise ValidationError("integrator dt_min exceeds dt_max", field="dt_min", value=self.dt_min)
        if self.stride < 1:
            raise ValidationError(f"integrator stride must be >= 1, got {self.stride}", field="stride", value=self.stride)

    @property
    def fixed_step(self) -> bool:
        return self.method == IntegratorMethod.RK4


@dataclass
class Trajectory:
    """Sampled states of one integration"""

    times: List[float] = field(default_factory=list)
    states: List[SystemState] = field(default_factory=list)
    reason: TerminationReason = TerminationReason.COMPLETED
    message: Optional[str] = None
    accepted_steps: int = 0
    rejected_steps: int = 0

    @property
    def completed(self) -> bool:
        return self.reason == TerminationReason.COMPLETED

    @property
    def final_state(self) -> SystemState:
        return self.states[-1]

    @property
    def positions(self) -> np.ndarray:
        """Shape (T, N, dim)"""
        return np.array([state.positions for state in self.states])

    @property
    def velocities(self) -> np.ndarray:
        return np.array([state.velocities for state in self.states])

    def _append(self, state: SystemState) -> None:
        self.times.append(state.t)
        self.states.append(state)


def regularity_check(
    manifold: ManifoldSpec,
    masses: Sequence[float],
    chart_tol: float = CHART_TOL,
    singularity_tol: float = SINGULARITY_TOL,
) -> EventCheck:
    """Event check for chart regularity and the singular set

    The returned callable raises ChartSingularityError or
    SingularConfigurationError for an offending state.
    """

    def check(state: SystemState) -> None:
        check_state_regular(state, manifold.kappa, chart_tol)
        reports = detect_singularities(BodySystem(manifold, masses, state.positions), singularity_tol)
        if reports:
            raise SingularConfigurationError(
                f"singular configuration at t={state.t}: "
                + ", ".join(f"{r.kind} {r.i},{r.j}" for r in reports),
                reports=reports,
            )

    return check


def rk4_step(rhs: FlatField, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rkf45_step(rhs: FlatField, t: float, y: np.ndarray, h: float):
    """One Fehlberg step

    Returns:
        (fourth-order solution, local error estimate)
    """
    stages = []
    for c, row in zip(RKF45_C, RKF45_A):
        increment = sum((a * k for a, k in zip(row, stages)), np.zeros_like(y))
        stages.append(rhs(t + c * h, y + h * increment))
    k = np.array(stages)
    return y + h * (RKF45_B4 @ k), h * (RKF45_ERR @ k)


def error_ratio(y: np.ndarray, y_new: np.ndarray, error: np.ndarray, atol: float, rtol: float) -> float:
    """max|e| / (atol + rtol·max|y|); a step is accepted at ≤ 1"""
    scale = atol + rtol * max(float(np.max(np.abs(y))), float(np.max(np.abs(y_new))))
    return float(np.max(np.abs(error))) / scale


def _step_factor(ratio: float) -> float:
    if ratio == 0.0:
        return MAX_FACTOR
    return min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * ratio ** -0.2))


def _candidate(
    step: Callable[[], np.ndarray], t_new: float, template: SystemState, event_check: Optional[EventCheck]
) -> SystemState:
    """Build and check the state of a candidate step

    Raises:
        CurvedNBodyError: From the vector field or the event check
    """
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            y_new = step()
    except (OverflowError, FloatingPointError) as e:
        raise IntegrationError(f"non-finite state at t={t_new}: {e}", t=t_new) from e
    if not np.all(np.isfinite(y_new)):
        raise IntegrationError(f"non-finite state at t={t_new}", t=t_new)
    state = SystemState.from_flat(t_new, y_new, template.n_bodies, template.dim)
    if event_check is not None:
        event_check(state)
    return state


def integrate(
    rhs: FlatField,
    initial: SystemState,
    cfg: IntegratorConfig,
    event_check: Optional[EventCheck] = None,
) -> Trajectory:
    """Integrate y' = rhs(t, y) from ``initial`` to ``cfg.t_end``

    The state is packed as (positions, velocities). Angles are not
    wrapped. Sample times are k·dt for RK4 with a clipped final step.

    Args:
        rhs: First-order vector field over packed states
        initial: Regular initial state
        cfg: Integrator settings
        event_check: Raises for states that must not be accepted

    Returns:
        Trajectory with the termination reason

    Raises:
        CurvedNBodyError: If the initial state itself fails the event check
    """
    if event_check is not None:
        event_check(initial)

    trajectory = Trajectory()
    trajectory._append(SystemState(initial.t, initial.positions.copy(), initial.velocities.copy()))
    t0 = initial.t
    t_end = t0 + cfg.t_end
    state = initial
    y = initial.flat()
    h = min(cfg.dt, cfg.dt_max) if not cfg.fixed_step else cfg.dt
    n_fixed = max(1, int(math.ceil(cfg.t_end / cfg.dt - 1e-9))) if cfg.fixed_step else None
    since_sample = 0

    while True:
        k = trajectory.accepted_steps
        if k >= cfg.max_steps:
            raise IntegrationError(f"max_steps={cfg.max_steps} reached at t={state.t}", t=state.t)
        if cfg.fixed_step:
            if k >= n_fixed:
                break
            t = state.t
            t_new = t0 + (k + 1) * cfg.dt if k + 1 < n_fixed else t_end
            h_step = t_new - t
        else:
            t = state.t
            if t_end - t <= 1e-12 * max(1.0, abs(t_end)):
                break
            if h < cfg.dt_min:
                trajectory.reason = TerminationReason.STEP_UNDERFLOW
                trajectory.message = f"step {h:.3e} below dt_min {cfg.dt_min:g} at t={t}"
                break
            h_step = min(h, t_end - t)
            t_new = t + h_step if h_step < t_end - t else t_end

        try:
            if cfg.fixed_step:
                new_state = _candidate(lambda: rk4_step(rhs, t, y, h_step), t_new, state, event_check)
            else:
                with np.errstate(over="ignore", invalid="ignore"):
                    y_new, err = rkf45_step(rhs, t, y, h_step)
                ratio = error_ratio(y, y_new, err, cfg.atol, cfg.rtol) if np.all(np.isfinite(err)) else math.inf
                if ratio > 1.0:
                    trajectory.rejected_steps += 1
                    h = h_step * (MIN_FACTOR if not math.isfinite(ratio) else _step_factor(ratio))
                    continue
                new_state = _candidate(lambda: y_new, t_new, state, event_check)
                h = min(cfg.dt_max, h_step * _step_factor(ratio))
        except IntegrationError as e:
            trajectory.reason = TerminationReason.NON_FINITE_STATE
            trajectory.message = e.message
            logger.warning(f"integration diverged at t={t}: {e.message}")
            break
        except CurvedNBodyError as e:
            trajectory.reason = TerminationReason.SINGULARITY_EVENT
            trajectory.message = e.message
            logger.info(f"integration stopped at t={t}: {e.message}")
            break

        state = new_state
        y = state.flat()
        trajectory.accepted_steps += 1
        since_sample += 1
        if since_sample >= cfg.stride:
            trajectory._append(state)
            since_sample = 0

    if trajectory.times[-1] != state.t:
        # keep the last good state even when it falls between strides
        trajectory._append(state)
    return trajectory
