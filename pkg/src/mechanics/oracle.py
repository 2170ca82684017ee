"""General Lagrangian Equations of Motion

A brute-force engine for the equations of motion of N particles, each
moving on its own copy of a Riemannian manifold with metric G_r:

    m_r ẍ^r_s = −Σ_i g_r^{si} ∂U/∂x^r_i − m_r Σ_{l,j} Γ^{s,r}_{lj} ẋ^r_l ẋ^r_j

with Christoffel symbols taken from central differences of the metric.
Nothing here reuses closed-form metrics or Christoffel tables, so the
engine serves as the reference the hand-coded systems are checked against.

Author: Curved N-Body Team
License: MIT
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..errors import InsufficientSamplesError, InvalidInputError, MetricInversionError, OracleCheckError
from ..logging import get_logger
from .geometry import ChartPoint, ManifoldSpec, metric as closed_metric, pullback_metric

logger = get_logger(__name__)

FD_REL_STEP = 1e-5
SYMMETRY_TOL = 1e-14
DELTA_TOL = 1e-10
MIN_SAMPLES = 5


def fd_steps(x: np.ndarray, rel_step: float = FD_REL_STEP) -> np.ndarray:
    """h_k = rel_step·max(1, |x_k|)"""
    return rel_step * np.maximum(1.0, np.abs(np.asarray(x, dtype=float)))


def fd_gradient(
    func: Callable[[np.ndarray], float], x: np.ndarray, rel_step: float = FD_REL_STEP
) -> np.ndarray:
    """Central-difference gradient of a scalar function of an array"""
    x0 = np.array(x, dtype=float)
    flat = x0.reshape(-1)
    steps = fd_steps(flat, rel_step)
    grad = np.zeros_like(flat)
    for k in range(flat.size):
        shifted = flat.copy()
        shifted[k] = flat[k] + steps[k]
        f_plus = func(shifted.reshape(x0.shape))
        shifted[k] = flat[k] - steps[k]
        f_minus = func(shifted.reshape(x0.shape))
        grad[k] = (f_plus - f_minus) / (2.0 * steps[k])
    return grad.reshape(x0.shape)


@dataclass
class MetricField:
    """Point → symmetric metric matrix of one particle's configuration slot"""

    func: Callable[[np.ndarray], np.ndarray]
    checked: bool = False
    name: str = "metric"

    def __call__(self, q: np.ndarray) -> np.ndarray:
        g = np.asarray(self.func(np.asarray(q, dtype=float)), dtype=float)
        if self.checked:
            asym = float(np.max(np.abs(g - g.T))) if g.size else 0.0
            if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(g)))):
                raise OracleCheckError(
                    f"{self.name} not symmetric at {q}: max|g - g^T| = {asym:.3e}",
                    invariant="metric-symmetry",
                    residual=asym,
                )
        return g


def pullback_metric_field(m: ManifoldSpec, checked: bool = False) -> MetricField:
    """Metric pulled back from the ambient Euclidean/Minkowski line element"""
    return MetricField(lambda q: pullback_metric(m, q), checked, name=f"pullback(kappa={m.kappa})")


def closed_metric_field(m: ManifoldSpec, checked: bool = False) -> MetricField:
    """Closed-form diagonal metric as a MetricField"""
    return MetricField(
        lambda q: closed_metric(m, ChartPoint.from_array(q))[0], checked, name=f"closed(kappa={m.kappa})"
    )


@dataclass
class PotentialField:
    """Configuration (N × dim) → U, with an optional analytic gradient

    Without ``gradient`` the partial derivatives come from central
    differences of ``value``.
    """

    value: Callable[[np.ndarray], float]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    rel_step: float = FD_REL_STEP

    def grad(self, positions: np.ndarray) -> np.ndarray:
        if self.gradient is not None:
            return np.asarray(self.gradient(positions), dtype=float)
        return fd_gradient(self.value, positions, self.rel_step)


ZERO_POTENTIAL = PotentialField(value=lambda positions: 0.0, gradient=lambda positions: np.zeros_like(positions))


def invert_metric(g: np.ndarray, checked: bool = False) -> np.ndarray:
    """Inverse metric; in checked mode also validates Σ_i g^{si} g_{il} = δ_{sl}

    Raises:
        MetricInversionError: If the matrix is singular or not finite
        OracleCheckError: If the δ-contraction fails in checked mode
    """
    if not np.all(np.isfinite(g)):
        raise MetricInversionError(f"metric has non-finite entries: {g.tolist()}")
    try:
        g_inv = np.linalg.inv(g)
    except np.linalg.LinAlgError as e:
        raise MetricInversionError(f"metric is singular: {g.tolist()}", cause=e) from e
    if not np.all(np.isfinite(g_inv)):
        raise MetricInversionError(f"metric inverse overflowed: {g.tolist()}")

    if checked:
        residual = float(np.max(np.abs(g_inv @ g - np.eye(len(g)))))
        if residual > DELTA_TOL:
            raise OracleCheckError(
                f"Kronecker-delta contraction residual {residual:.3e} exceeds {DELTA_TOL:g}",
                invariant="delta-contraction",
                residual=residual,
            )
    return g_inv


def metric_derivatives(metric: Callable[[np.ndarray], np.ndarray], q: np.ndarray, rel_step: float = FD_REL_STEP) -> np.ndarray:
    """dG[k] = ∂_k G by central differences, shape (dim, dim, dim)"""
    q = np.asarray(q, dtype=float)
    steps = fd_steps(q, rel_step)
    derivs = []
    for k in range(len(q)):
        plus, minus = q.copy(), q.copy()
        plus[k] += steps[k]
        minus[k] -= steps[k]
        derivs.append((metric(plus) - metric(minus)) / (2.0 * steps[k]))
    return np.array(derivs)


def christoffel_numeric(
    metric: Callable[[np.ndarray], np.ndarray],
    q: np.ndarray,
    rel_step: float = FD_REL_STEP,
    checked: bool = False,
) -> np.ndarray:
    """Γ^s_{lj} = ½ Σ_i g^{si}(∂_j g_{il} + ∂_l g_{ij} − ∂_i g_{lj})

    Args:
        metric: Point → metric matrix
        q: Chart point
        rel_step: Relative central-difference step
        checked: Validate symmetry and the δ-contraction

    Returns:
        Γ indexed [s][l][j]

    Raises:
        MetricInversionError: If the metric at q is not invertible
    """
    q = np.asarray(q, dtype=float)
    g_inv = invert_metric(metric(q), checked)
    dg = metric_derivatives(metric, q, rel_step)

    # lowered[i, l, j] = ∂_j g_il + ∂_l g_ij − ∂_i g_lj
    lowered = np.einsum("jil->ilj", dg) + np.einsum("lij->ilj", dg) - dg
    gamma = 0.5 * np.einsum("si,ilj->slj", g_inv, lowered)

    if checked:
        asym = float(np.max(np.abs(gamma - np.swapaxes(gamma, 1, 2))))
        if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(gamma)))):
            raise OracleCheckError(
                f"Christoffel symbols not symmetric in the lower indices ({asym:.3e})",
                invariant="christoffel-symmetry",
                residual=asym,
            )
    return gamma


def _as_metric_list(metrics, n_bodies: int) -> List[Callable[[np.ndarray], np.ndarray]]:
    if callable(metrics):
        return [metrics] * n_bodies
    metrics = list(metrics)
    if len(metrics) != n_bodies:
        raise InvalidInputError(f"{len(metrics)} metric fields for {n_bodies} bodies")
    return metrics


def eom_rhs_general(
    metrics,
    potential: PotentialField,
    masses: Sequence[float],
    positions: np.ndarray,
    velocities: np.ndarray,
    rel_step: float = FD_REL_STEP,
    checked: bool = False,
) -> np.ndarray:
    """Accelerations ẍ = −m_r⁻¹ G_r⁻¹ ∇_r U − Γ_r(ẋ_r, ẋ_r) of every body

    Args:
        metrics: One metric field shared by all bodies, or one per body
        potential: Potential field over the configuration
        masses: Body masses
        positions: Chart positions, shape (N, dim)
        velocities: Chart velocities, shape (N, dim)
        rel_step: Relative central-difference step
        checked: Run the invariant assertions

    Returns:
        Accelerations, shape (N, dim)
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    velocities = np.atleast_2d(np.asarray(velocities, dtype=float))
    fields = _as_metric_list(metrics, len(positions))
    grad_u = potential.grad(positions)

    acc = np.zeros_like(positions)
    for r, (q, v) in enumerate(zip(positions, velocities)):
        g_inv = invert_metric(fields[r](q), checked)
        gamma = christoffel_numeric(fields[r], q, rel_step, checked)
        acc[r] = -(g_inv @ grad_u[r]) / masses[r] - np.einsum("slj,l,j->s", gamma, v, v)
    return acc


def time_derivatives(samples: np.ndarray, dt: float) -> tuple:
    """Fourth-order five-point first and second derivatives at interior samples

    Returns:
        (velocity, acceleration) arrays for samples 2 … T−3
    """
    x = np.asarray(samples, dtype=float)
    xm2, xm1, x0, xp1, xp2 = x[:-4], x[1:-3], x[2:-2], x[3:-1], x[4:]
    velocity = (-xp2 + 8.0 * xp1 - 8.0 * xm1 + xm2) / (12.0 * dt)
    acceleration = (-xp2 + 16.0 * xp1 - 30.0 * x0 + 16.0 * xm1 - xm2) / (12.0 * dt * dt)
    return velocity, acceleration


def euler_lagrange_residual(
    times: Sequence[float],
    positions: np.ndarray,
    metrics,
    potential: PotentialField,
    masses: Sequence[float],
    rel_step: float = FD_REL_STEP,
) -> np.ndarray:
    """Residual of d/dt(∂L/∂ẋ) − ∂L/∂x along sampled positions

    L = Σ_r ½ m_r ẋ_rᵀ G_r ẋ_r − U. Time derivatives use five-point
    stencils on uniformly spaced samples, so the residual is reported at
    the interior samples 2 … T−3.

    Args:
        times: Uniformly spaced sample times
        positions: Sampled chart positions, shape (T, N, dim)
        metrics: One metric field shared by all bodies, or one per body
        potential: Potential field
        masses: Body masses

    Returns:
        Max-abs residual per interior sample, shape (T−4,)

    Raises:
        InsufficientSamplesError: With fewer than five samples
        InvalidInputError: For non-uniform sample times
    """
    times = np.asarray(times, dtype=float)
    positions = np.asarray(positions, dtype=float)
    if positions.ndim == 2:
        positions = positions[:, None, :]
    if len(times) < MIN_SAMPLES or len(positions) < MIN_SAMPLES:
        raise InsufficientSamplesError(
            f"euler_lagrange_residual needs at least {MIN_SAMPLES} samples, got {len(positions)}"
        )
    steps = np.diff(times)
    dt = float(steps[0])
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise InvalidInputError("euler_lagrange_residual needs uniformly spaced increasing times")

    fields = _as_metric_list(metrics, positions.shape[1])
    velocity, acceleration = time_derivatives(positions, dt)
    interior = positions[2:-2]

    residuals = np.zeros(len(interior))
    for t_index, (q_all, v_all, a_all) in enumerate(zip(interior, velocity, acceleration)):
        grad_u = potential.grad(q_all)
        worst = 0.0
        for r, (q, v, a) in enumerate(zip(q_all, v_all, a_all)):
            g = fields[r](q)
            dg = metric_derivatives(fields[r], q, rel_step)
            g_dot = np.einsum("kil,k->il", dg, v)
            momentum_rate = masses[r] * (g_dot @ v + g @ a)
            force = 0.5 * masses[r] * np.einsum("kil,i,l->k", dg, v, v) - grad_u[r]
            worst = max(worst, float(np.max(np.abs(momentum_rate - force))))
        residuals[t_index] = worst
    logger.debug(
        "euler-lagrange residual evaluated",
        samples=len(residuals),
        max_residual=float(np.max(residuals)) if len(residuals) else 0.0,
    )
    return residuals
