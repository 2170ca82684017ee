"""Reference Problems

Closed-form geodesics and standard configurations used by the
verification suite, the CLI defaults and the tests.

Author: Curved N-Body Team
License: MIT
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError
from .convergence import SlopeFit, fit_loglog_slope
from .dynamics import SystemState, curved_vector_field
from .geometry import ChordalPoint, ManifoldSpec
from .integrate import IntegratorConfig, integrate
from .ktrig import csn, sn
from .potentials import BodySystem, FreePotential, grad_chart


def great_circle(s0: float, phi_dot0: float, t) -> Tuple[np.ndarray, ...]:
    """Geodesic on the unit sphere through (s0, φ=0) with ṡ=0, φ̇=φ̇0

    cos s = cos s0 cos ωt and φ = atan2(sin ωt, sin s0 cos ωt), with
    ω = sin s0 · φ̇0. φ is continued past ±π so it grows without jumps.

    Returns:
        (s, φ, ṡ, φ̇) at the given time(s)
    """
    if not 0.0 < s0 < math.pi:
        raise InvalidInputError(f"great circle start s0={s0} must lie in (0, pi)")
    t = np.asarray(t, dtype=float)
    omega = math.sin(s0) * phi_dot0
    wt = omega * t

    s = np.arccos(np.clip(math.cos(s0) * np.cos(wt), -1.0, 1.0))
    principal = np.arctan2(np.sin(wt), math.sin(s0) * np.cos(wt))
    # φ and ωt share a quadrant, so the branch is the one nearest ωt
    phi = principal + 2.0 * np.pi * np.round((wt - principal) / (2.0 * np.pi))

    sin_s = np.sin(s)
    s_dot = omega * math.cos(s0) * np.sin(wt) / sin_s
    phi_dot = omega * math.sin(s0) / (sin_s * sin_s)
    return s, phi, s_dot, phi_dot


def great_circle_state(s0: float, phi_dot0: float, t: float = 0.0) -> SystemState:
    s, phi, s_dot, phi_dot = (float(v) for v in great_circle(s0, phi_dot0, t))
    return SystemState(t, [[s, phi]], [[s_dot, phi_dot]])


def great_circle_errors(
    dts: Sequence[float], t_end: float = 1.0, s0: float = 1.0, phi_dot0: float = 1.0
) -> List[float]:
    """Max state error at t_end of RK4 runs on the great-circle geodesic"""
    manifold = ManifoldSpec(2, 1.0)
    field_fn = curved_vector_field(manifold, [1.0], FreePotential())
    exact = np.array([float(v) for v in great_circle(s0, phi_dot0, t_end)])

    errors = []
    for dt in dts:
        trajectory = integrate(field_fn, great_circle_state(s0, phi_dot0), IntegratorConfig(t_end=t_end, dt=dt))
        final = trajectory.final_state
        numeric = np.array(
            [final.positions[0, 0], final.positions[0, 1], final.velocities[0, 0], final.velocities[0, 1]]
        )
        errors.append(float(np.max(np.abs(numeric - exact))))
    return errors


def observed_order(steps: Sequence[float], errors: Sequence[float]) -> Optional[SlopeFit]:
    """Slope of log error against log step"""
    return fit_loglog_slope(steps, errors)


def circular_angular_velocity(kappa: float, s: float = 0.5, mass: float = 1.0, dim: int = 2) -> float:
    """Angular rate keeping two equal masses at s on opposite sides in circular motion

    Solves m φ̇² sn csn = ∂U/∂s for the cotangent potential.
    """
    m = ManifoldSpec(dim, kappa)
    positions = [[s, 0.0], [s, math.pi]] if dim == 2 else [[s, math.pi / 2, 0.0], [s, math.pi / 2, math.pi]]
    grad = grad_chart(BodySystem(m, [mass, mass], positions))
    return math.sqrt(grad[0, 0] / (mass * sn(kappa, s) * csn(kappa, s)))


def two_body_circular(
    kappa: float = 0.0,
    s: float = 0.5,
    mass: float = 1.0,
    dim: int = 2,
    angular_velocity: Optional[float] = None,
) -> Tuple[List[float], SystemState]:
    """Two equal masses at s on opposite meridians, rotating about the pole

    With ``angular_velocity`` unset the rate of the exact circular orbit at
    κ is used; at κ=0, s=0.5, m=1 that is √2.

    Returns:
        (masses, initial state)
    """
    rate = angular_velocity if angular_velocity is not None else circular_angular_velocity(kappa, s, mass, dim)
    if dim == 2:
        positions = [[s, 0.0], [s, math.pi]]
        velocities = [[0.0, rate], [0.0, rate]]
    else:
        positions = [[s, math.pi / 2, 0.0], [s, math.pi / 2, math.pi]]
        velocities = [[0.0, 0.0, rate], [0.0, 0.0, rate]]
    return [mass, mass], SystemState(0.0, positions, velocities)


def three_body_chordal(dim: int = 2) -> Tuple[List[float], List[ChordalPoint]]:
    """A fixed nonsingular three-body chordal configuration"""
    if dim == 2:
        points = [ChordalPoint(0.5, 0.0), ChordalPoint(0.7, 2.0), ChordalPoint(0.6, 4.2)]
    else:
        points = [
            ChordalPoint(0.5, 1.0, 0.0),
            ChordalPoint(0.7, 1.4, 2.0),
            ChordalPoint(0.6, 2.0, 4.2),
        ]
    return [1.0, 2.0, 1.5], points
