"""Hand-Coded Equations of Motion

The curved 2D system in geodesic polar coordinates

    s̈ = −m⁻¹ ∂U/∂s + φ̇² sn csn
    φ̈ = −m⁻¹ sn⁻² ∂U/∂φ − 2 ṡ φ̇ ctn

the curved 3D system in hyperspherical coordinates

    s̈ = −m⁻¹ ∂U/∂s + (φ̇² + θ̇² sin²φ) sn csn
    φ̈ = −m⁻¹ sn⁻² ∂U/∂φ + θ̇² sin φ cos φ − 2 ṡ φ̇ ctn
    θ̈ = −m⁻¹ sn⁻² sin⁻²φ ∂U/∂θ − 2 ṡ θ̇ ctn − 2 φ̇ θ̇ cot φ

(sn, csn, ctn evaluated at s of the body), their flat polar/spherical
forms, the Newtonian field in Cartesian coordinates, and the conserved
energy and angular momentum with their analytic time derivatives.

Author: Curved N-Body Team
License: MIT
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError, OracleCheckError, SingularConfigurationError
from .geometry import (
    CHART_TOL,
    ChartPoint,
    ManifoldSpec,
    chart_acceleration_to_planar,
    chart_to_planar,
    chart_velocity_to_planar,
    check_chart_regular,
)
from .ktrig import csn, ctn, sn
from .oracle import FD_REL_STEP, PotentialField, eom_rhs_general, pullback_metric_field
from .potentials import (
    COLLISION,
    SINGULARITY_TOL,
    BodySystem,
    CotangentPotential,
    Potential,
    SingularityReport,
)

ORACLE_RTOL = 1e-6

# alias for per-body chart accelerations, shape (N, dim)
VectorFieldEval = np.ndarray


@dataclass
class SystemState:
    """Time plus chart positions and velocities of every body, shape (N, dim)"""

    t: float
    positions: np.ndarray
    velocities: np.ndarray = field(default=None)

    def __post_init__(self):
        self.positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if self.velocities is None:
            self.velocities = np.zeros_like(self.positions)
        self.velocities = np.atleast_2d(np.asarray(self.velocities, dtype=float))
        if self.positions.shape != self.velocities.shape:
            raise InvalidInputError(
                f"positions {self.positions.shape} and velocities {self.velocities.shape} differ"
            )

    @property
    def n_bodies(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def flat(self) -> np.ndarray:
        return np.concatenate([self.positions.ravel(), self.velocities.ravel()])

    @classmethod
    def from_flat(cls, t: float, y: np.ndarray, n_bodies: int, dim: int) -> "SystemState":
        half = n_bodies * dim
        return cls(t, y[:half].reshape(n_bodies, dim).copy(), y[half:].reshape(n_bodies, dim).copy())


def _body_system(state: SystemState, masses: Sequence[float], kappa: float) -> BodySystem:
    return BodySystem(ManifoldSpec(state.dim, kappa), masses, state.positions)


def check_state_regular(state: SystemState, kappa: float, tol: float = CHART_TOL) -> None:
    """Raise ChartSingularityError if any body sits on a chart degeneracy

    A body outside the chart domain raises ChartDomainError.
    """
    m = ManifoldSpec(state.dim, kappa)
    for index, q in enumerate(state.positions):
        check_chart_regular(m, q, tol, body=index)


def rhs_curved_2d(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> VectorFieldEval:
    """Accelerations (s̈, φ̈) of the curved 2D system

    Raises:
        ChartSingularityError: If a body has sn_κ(s) ≈ 0
        SingularConfigurationError: For collisions or antipodal pairs
    """
    if state.dim != 2:
        raise InvalidInputError("rhs_curved_2d needs a 2D state")
    potential = potential or CotangentPotential()
    check_state_regular(state, kappa, chart_tol)
    grad = potential.gradient(_body_system(state, masses, kappa))

    acc = np.zeros_like(state.positions)
    for r, ((s, _), (s_dot, phi_dot)) in enumerate(zip(state.positions, state.velocities)):
        sn_s, csn_s, ctn_s = sn(kappa, s), csn(kappa, s), ctn(kappa, s)
        m = masses[r]
        acc[r, 0] = -grad[r, 0] / m + phi_dot * phi_dot * sn_s * csn_s
        acc[r, 1] = -grad[r, 1] / (m * sn_s * sn_s) - 2.0 * s_dot * phi_dot * ctn_s
    return acc


def rhs_curved_3d(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> VectorFieldEval:
    """Accelerations (s̈, φ̈, θ̈) of the curved 3D system

    The centrifugal term of φ̈ is θ̇² sin φ cos φ.

    Raises:
        ChartSingularityError: If a body has sn_κ(s) ≈ 0 or sin φ ≈ 0
        SingularConfigurationError: For collisions or antipodal pairs
    """
    if state.dim != 3:
        raise InvalidInputError("rhs_curved_3d needs a 3D state")
    potential = potential or CotangentPotential()
    check_state_regular(state, kappa, chart_tol)
    grad = potential.gradient(_body_system(state, masses, kappa))

    acc = np.zeros_like(state.positions)
    for r, ((s, phi, _), (s_dot, phi_dot, theta_dot)) in enumerate(
        zip(state.positions, state.velocities)
    ):
        sn_s, csn_s, ctn_s = sn(kappa, s), csn(kappa, s), ctn(kappa, s)
        sp, cp = math.sin(phi), math.cos(phi)
        m = masses[r]
        sn2 = sn_s * sn_s
        acc[r, 0] = -grad[r, 0] / m + (phi_dot**2 + theta_dot**2 * sp * sp) * sn_s * csn_s
        acc[r, 1] = (
            -grad[r, 1] / (m * sn2)
            + theta_dot**2 * sp * cp
            - 2.0 * s_dot * phi_dot * ctn_s
        )
        acc[r, 2] = (
            -grad[r, 2] / (m * sn2 * sp * sp)
            - 2.0 * s_dot * theta_dot * ctn_s
            - 2.0 * phi_dot * theta_dot * cp / sp
        )
    return acc


def rhs_curved(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> VectorFieldEval:
    """Dispatch to the 2D or 3D system by state dimension"""
    rhs = rhs_curved_2d if state.dim == 2 else rhs_curved_3d
    return rhs(state, masses, kappa, potential, chart_tol)


def rhs_flat_polar(
    state: SystemState,
    masses: Sequence[float],
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> VectorFieldEval:
    """Flat polar system: s̈ = −m⁻¹∂U/∂s + s φ̇², φ̈ = −m⁻¹s⁻²∂U/∂φ − 2 s⁻¹ ṡ φ̇"""
    potential = potential or CotangentPotential()
    check_state_regular(state, 0.0, chart_tol)
    grad = potential.gradient(_body_system(state, masses, 0.0))

    acc = np.zeros_like(state.positions)
    for r, ((s, _), (s_dot, phi_dot)) in enumerate(zip(state.positions, state.velocities)):
        acc[r, 0] = -grad[r, 0] / masses[r] + s * phi_dot * phi_dot
        acc[r, 1] = -grad[r, 1] / (masses[r] * s * s) - 2.0 * s_dot * phi_dot / s
    return acc


def rhs_flat_spherical(
    state: SystemState,
    masses: Sequence[float],
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> VectorFieldEval:
    """Flat spherical-coordinate system (s, φ, θ)"""
    potential = potential or CotangentPotential()
    check_state_regular(state, 0.0, chart_tol)
    grad = potential.gradient(_body_system(state, masses, 0.0))

    acc = np.zeros_like(state.positions)
    for r, ((s, phi, _), (s_dot, phi_dot, theta_dot)) in enumerate(
        zip(state.positions, state.velocities)
    ):
        sp, cp = math.sin(phi), math.cos(phi)
        m = masses[r]
        acc[r, 0] = -grad[r, 0] / m + s * (phi_dot**2 + theta_dot**2 * sp * sp)
        acc[r, 1] = -grad[r, 1] / (m * s * s) + theta_dot**2 * sp * cp - 2.0 * s_dot * phi_dot / s
        acc[r, 2] = (
            -grad[r, 2] / (m * s * s * sp * sp)
            - 2.0 * s_dot * theta_dot / s
            - 2.0 * phi_dot * theta_dot * cp / sp
        )
    return acc


def rhs_newton_cartesian(
    positions: np.ndarray, masses: Sequence[float], tol: float = SINGULARITY_TOL
) -> np.ndarray:
    """ẍ_r = Σ_j m_j (x_j − x_r) / |x_j − x_r|³

    Raises:
        SingularConfigurationError: For coincident bodies
    """
    x = np.atleast_2d(np.asarray(positions, dtype=float))
    acc = np.zeros_like(x)
    for r in range(len(x)):
        for j in range(len(x)):
            if j == r:
                continue
            diff = x[j] - x[r]
            dist = float(np.linalg.norm(diff))
            if dist < tol:
                pair = (min(r, j), max(r, j))
                raise SingularConfigurationError(
                    f"collision of bodies {pair[0]},{pair[1]}",
                    reports=[SingularityReport(pair[0], pair[1], COLLISION, dist)],
                )
            acc[r] += masses[j] * diff / dist**3
    return acc


def flat_state_to_cartesian(state: SystemState) -> Tuple[np.ndarray, np.ndarray]:
    """Cartesian positions and velocities of a κ=0 chart state"""
    x = np.array([chart_to_planar(ChartPoint.from_array(q)) for q in state.positions])
    v = np.array(
        [chart_velocity_to_planar(q, qd) for q, qd in zip(state.positions, state.velocities)]
    )
    return x, v


def chart_accelerations_to_cartesian(state: SystemState, chart_acc: np.ndarray) -> np.ndarray:
    """Map κ=0 chart accelerations to Cartesian accelerations body by body"""
    return np.array(
        [
            chart_acceleration_to_planar(q, qd, qdd)
            for q, qd, qdd in zip(state.positions, state.velocities, chart_acc)
        ]
    )


def _kinetic_terms(state: SystemState, kappa: float):
    for (q, v) in zip(state.positions, state.velocities):
        sn_s = sn(kappa, q[0])
        sin2 = math.sin(q[1]) ** 2 if state.dim == 3 else 1.0
        yield q, v, sn_s, sin2


def energy(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
) -> float:
    """E = ½ Σ m(ṡ² + sn² φ̇² [+ sn² sin²φ θ̇²]) + U"""
    potential = potential or CotangentPotential()
    kinetic = 0.0
    for m, (q, v, sn_s, sin2) in zip(masses, _kinetic_terms(state, kappa)):
        speed2 = v[0] ** 2 + sn_s**2 * v[1] ** 2
        if state.dim == 3:
            speed2 += sn_s**2 * sin2 * v[2] ** 2
        kinetic += 0.5 * m * speed2
    return kinetic + potential.value(_body_system(state, masses, kappa))


def angular_momentum(state: SystemState, masses: Sequence[float], kappa: float) -> float:
    """L_z = Σ m sn² φ̇ (2D) or Σ m sn² sin²φ θ̇ (3D)"""
    total = 0.0
    for m, (q, v, sn_s, sin2) in zip(masses, _kinetic_terms(state, kappa)):
        rate = v[1] if state.dim == 2 else v[2]
        total += m * sn_s**2 * sin2 * rate
    return total


def energy_rate(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> float:
    """dE/dt along the vector field, evaluated algebraically at one state"""
    potential = potential or CotangentPotential()
    acc = rhs_curved(state, masses, kappa, potential, chart_tol)
    grad = potential.gradient(_body_system(state, masses, kappa))

    rate = float(np.sum(grad * state.velocities))
    for m, a, (q, v, sn_s, sin2) in zip(masses, acc, _kinetic_terms(state, kappa)):
        sc = sn_s * csn(kappa, q[0])
        term = v[0] * a[0] + sc * v[0] * v[1] ** 2 + sn_s**2 * v[1] * a[1]
        if state.dim == 3:
            sp, cp = math.sin(q[1]), math.cos(q[1])
            term += (
                sc * v[0] * sin2 * v[2] ** 2
                + sn_s**2 * sp * cp * v[1] * v[2] ** 2
                + sn_s**2 * sin2 * v[2] * a[2]
            )
        rate += m * term
    return rate


def angular_momentum_rate(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> float:
    """dL_z/dt along the vector field, evaluated algebraically at one state"""
    acc = rhs_curved(state, masses, kappa, potential, chart_tol)
    rate = 0.0
    for m, a, (q, v, sn_s, sin2) in zip(masses, acc, _kinetic_terms(state, kappa)):
        sc = sn_s * csn(kappa, q[0])
        if state.dim == 2:
            rate += m * (2.0 * sc * v[0] * v[1] + sn_s**2 * a[1])
        else:
            sp, cp = math.sin(q[1]), math.cos(q[1])
            rate += m * (
                2.0 * sc * v[0] * sin2 * v[2]
                + 2.0 * sn_s**2 * sp * cp * v[1] * v[2]
                + sn_s**2 * sin2 * a[2]
            )
    return rate


def oracle_potential_field(
    manifold: ManifoldSpec, masses: Sequence[float], potential: Potential, analytic: bool = False
) -> PotentialField:
    """Wrap a potential strategy as an oracle PotentialField

    By default only the value is exposed, so the oracle differentiates it
    numerically.
    """

    def value(positions: np.ndarray) -> float:
        return potential.value(BodySystem(manifold, masses, positions))

    gradient = None
    if analytic:
        gradient = lambda positions: potential.gradient(BodySystem(manifold, masses, positions))
    return PotentialField(value=value, gradient=gradient)


def oracle_rhs(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    rel_step: float = FD_REL_STEP,
    checked: bool = False,
) -> VectorFieldEval:
    """Accelerations from the general engine with the pulled-back metric"""
    potential = potential or CotangentPotential()
    manifold = ManifoldSpec(state.dim, kappa)
    return eom_rhs_general(
        pullback_metric_field(manifold, checked),
        oracle_potential_field(manifold, masses, potential),
        masses,
        state.positions,
        state.velocities,
        rel_step=rel_step,
        checked=checked,
    )


def relative_difference(a: np.ndarray, b: np.ndarray) -> float:
    """max|a − b| / max(1, max|b|)"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def cross_check_rhs(
    state: SystemState,
    masses: Sequence[float],
    kappa: float,
    potential: Optional[Potential] = None,
    rtol: float = ORACLE_RTOL,
    rel_step: float = FD_REL_STEP,
) -> float:
    """Compare the hand-coded system with the general engine at one state

    Returns:
        The relative difference

    Raises:
        OracleCheckError: If the difference exceeds ``rtol``
    """
    hand = rhs_curved(state, masses, kappa, potential)
    reference = oracle_rhs(state, masses, kappa, potential, rel_step, checked=True)
    diff = relative_difference(hand, reference)
    if diff > rtol:
        raise OracleCheckError(
            f"hand-coded vector field differs from the general engine by {diff:.3e} at t={state.t}",
            invariant="rhs-oracle",
            residual=diff,
        )
    return diff


def curved_vector_field(
    manifold: ManifoldSpec,
    masses: Sequence[float],
    potential: Optional[Potential] = None,
    chart_tol: float = CHART_TOL,
) -> Callable[[float, np.ndarray], np.ndarray]:
    """First-order field y' = f(t, y) over packed (positions, velocities)"""
    potential = potential or CotangentPotential()
    n_bodies = len(masses)

    def field_fn(t: float, y: np.ndarray) -> np.ndarray:
        state = SystemState.from_flat(t, y, n_bodies, manifold.dim)
        acc = rhs_curved(state, masses, manifold.kappa, potential, chart_tol)
        return np.concatenate([state.velocities.ravel(), acc.ravel()])

    return field_fn
