"""Cotangent and Newtonian Potentials

The curved gravitational potential U_κ = −Σ m_i m_j ctn_κ(d_κ(i, j)) in its
geodesic, ambient and on-manifold chordal forms, the Newtonian potential,
analytic chart gradients and the singular set (collisions and, on
spheres, antipodal pairs).

The production path is the chordal form, written through the pole-shifted
chord q. It stays well conditioned near κ=0 and equals −Σ m_i m_j / q at
κ=0, so the same code yields the Newtonian potential and gradient there.
The gravitational constant is 1.

Author: Curved N-Body Team
License: MIT
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CurvedNBodyError, InvalidInputError, SingularConfigurationError
from ..logging import get_logger
from .convergence import ConvergenceReport, ConvergenceRow, build_report
from .geometry import (
    ChartPoint,
    ChordalPoint,
    Frame,
    ManifoldSpec,
    chart_to_extrinsic,
    chart_to_planar,
    chordal_to_chart,
    geodesic_distance,
)
from .ktrig import csn, ctn, sn

logger = get_logger(__name__)

SINGULARITY_TOL = 1e-9

COLLISION = "collision"
ANTIPODAL = "antipodal"


@dataclass(frozen=True)
class SingularityReport:
    """A pair of bodies in the singular set"""

    i: int
    j: int
    kind: str
    value: float

    def to_dict(self) -> Dict[str, Any]:
        return {"pair": [self.i, self.j], "kind": self.kind, "value": self.value}


@dataclass
class BodySystem:
    """Masses and chart positions (N × dim) on one manifold"""

    manifold: ManifoldSpec
    masses: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        self.masses = np.asarray(self.masses, dtype=float)
        self.positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if self.masses.ndim != 1 or len(self.masses) != len(self.positions):
            raise InvalidInputError(
                f"{len(self.masses)} masses for {len(self.positions)} positions"
            )
        if self.positions.shape[1] != self.manifold.dim:
            raise InvalidInputError(
                f"positions have {self.positions.shape[1]} coordinates on a "
                f"dim-{self.manifold.dim} manifold"
            )
        for index, mass in enumerate(self.masses):
            if not mass > 0:
                raise InvalidInputError(f"mass of body {index} must be positive, got {mass}")

    @property
    def n_bodies(self) -> int:
        return len(self.masses)

    def point(self, index: int) -> ChartPoint:
        return ChartPoint.from_array(self.positions[index])

    def pairs(self) -> Iterable[Tuple[int, int]]:
        for i in range(self.n_bodies):
            for j in range(i + 1, self.n_bodies):
                yield i, j

    def with_positions(self, positions: np.ndarray) -> "BodySystem":
        return BodySystem(self.manifold, self.masses, positions)


def pole_shifted_coordinates(system: BodySystem) -> np.ndarray:
    """Pole-shifted embedding of every body, shape (N, dim+1)"""
    return np.array(
        [chart_to_extrinsic(system.manifold, system.point(i)).vector for i in range(system.n_bodies)]
    )


def pair_chords(system: BodySystem) -> Dict[Tuple[int, int], float]:
    """Signature-σ chordal distance of every pair"""
    coords = pole_shifted_coordinates(system)
    sig = system.manifold.sigma
    chords = {}
    for i, j in system.pairs():
        diff = coords[i] - coords[j]
        radicand = float(np.dot(diff[:-1], diff[:-1]) + sig * diff[-1] ** 2)
        chords[(i, j)] = math.sqrt(max(radicand, 0.0))
    return chords


def detect_singularities(system: BodySystem, tol: float = SINGULARITY_TOL) -> List[SingularityReport]:
    """All pairs with q < tol (collision) or, for κ>0, 4 − κq² < tol (antipodal)"""
    kappa = system.manifold.kappa
    reports = []
    for (i, j), q in pair_chords(system).items():
        if q < tol:
            reports.append(SingularityReport(i, j, COLLISION, q))
        elif kappa > 0 and 4.0 - kappa * q * q < tol:
            reports.append(SingularityReport(i, j, ANTIPODAL, q))
    return reports


def _require_regular(system: BodySystem, tol: float) -> Dict[Tuple[int, int], float]:
    reports = detect_singularities(system, tol)
    if reports:
        described = ", ".join(f"{r.kind} of bodies {r.i},{r.j} (q={r.value:.3e})" for r in reports)
        raise SingularConfigurationError(f"configuration in the singular set: {described}", reports=reports)
    return pair_chords(system)


def u_cotangent(system: BodySystem, form: str = "chordal", tol: float = SINGULARITY_TOL) -> float:
    """Cotangent potential

    Args:
        system: Bodies on the manifold
        form: ``chordal`` (on-manifold form, primary path, valid at κ=0),
            ``geodesic`` (ctn of the dot-product distance) or ``ambient``
            (center-origin ambient form)
        tol: Singular-set tolerance

    Raises:
        SingularConfigurationError: For collisions or antipodal pairs
        InvalidInputError: For the geodesic/ambient forms at κ=0
    """
    kappa = system.manifold.kappa
    chords = _require_regular(system, tol)
    m = system.masses

    if form == "chordal":
        total = 0.0
        for (i, j), q in chords.items():
            kq2 = kappa * q * q
            total -= m[i] * m[j] * (2.0 - kq2) / (q * math.sqrt(4.0 - kq2))
        return total

    if kappa == 0:
        raise InvalidInputError(f"the {form} form of the cotangent potential needs kappa != 0")

    if form == "geodesic":
        total = 0.0
        for i, j in system.pairs():
            d = geodesic_distance(system.manifold, system.point(i), system.point(j))
            total -= m[i] * m[j] * ctn(kappa, d)
        return total

    if form == "ambient":
        return _u_ambient(system, kappa)

    raise InvalidInputError(f"unknown potential form '{form}'")


def _u_ambient(system: BodySystem, kappa: float) -> float:
    sig = system.manifold.sigma
    coords = np.array(
        [
            chart_to_extrinsic(system.manifold, system.point(i), Frame.CENTER_ORIGIN).vector
            for i in range(system.n_bodies)
        ]
    )

    def inner(a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(a[:-1], b[:-1]) + sig * a[-1] * b[-1])

    m = system.masses
    total = 0.0
    for i, j in system.pairs():
        qi2 = inner(coords[i], coords[i])
        qj2 = inner(coords[j], coords[j])
        diff = coords[i] - coords[j]
        qij2 = inner(diff, diff)
        numerator = kappa * qi2 + kappa * qj2 - kappa * qij2
        radicand = (
            2.0 * (kappa * qi2 + kappa * qj2) * qij2
            - kappa * (qi2 - qj2) ** 2
            - kappa * qij2 * qij2
        )
        if radicand <= 0:
            raise SingularConfigurationError(
                f"ambient form undefined for bodies {i},{j} (radicand {radicand:.3e})",
                reports=[SingularityReport(i, j, COLLISION, math.sqrt(max(qij2, 0.0)))],
            )
        total -= m[i] * m[j] * numerator / math.sqrt(radicand)
    return total


def newton_potential_cartesian(masses: Sequence[float], points: np.ndarray, tol: float = SINGULARITY_TOL) -> float:
    """−Σ m_i m_j / |x_i − x_j| for Cartesian points"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    total = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            r = float(np.linalg.norm(points[i] - points[j]))
            if r < tol:
                raise SingularConfigurationError(
                    f"collision of bodies {i},{j}", reports=[SingularityReport(i, j, COLLISION, r)]
                )
            total -= masses[i] * masses[j] / r
    return total


def u_newton(system: BodySystem, tol: float = SINGULARITY_TOL) -> float:
    """Newtonian potential with distances from the κ=0 chart

    Raises:
        InvalidInputError: If the system is not on the flat manifold
        SingularConfigurationError: For coincident bodies
    """
    if system.manifold.kappa != 0:
        raise InvalidInputError("u_newton needs a kappa=0 system")
    points = np.array([chart_to_planar(system.point(i)) for i in range(system.n_bodies)])
    return newton_potential_cartesian(system.masses, points, tol)


def _gamma_partials(a: np.ndarray, b: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """γ_ab and its angular partials w.r.t. body a and body b

    Partials are returned as arrays over the angular coordinates (φ[, θ]).
    """
    if len(a) == 2:
        delta = a[1] - b[1]
        return math.cos(delta), np.array([-math.sin(delta)]), np.array([math.sin(delta)])

    spa, cpa = math.sin(a[1]), math.cos(a[1])
    spb, cpb = math.sin(b[1]), math.cos(b[1])
    dth = a[2] - b[2]
    cdt, sdt = math.cos(dth), math.sin(dth)
    gamma = cpa * cpb + spa * spb * cdt
    grad_a = np.array([-spa * cpb + cpa * spb * cdt, -spa * spb * sdt])
    grad_b = np.array([-cpa * spb + spa * cpb * cdt, spa * spb * sdt])
    return gamma, grad_a, grad_b


def grad_chart(system: BodySystem, tol: float = SINGULARITY_TOL) -> np.ndarray:
    """Analytic ∂U/∂(s, φ[, θ]) per body, shape (N, dim)

    Uses dU/dd = m_i m_j / sn_κ²(d) with ∂d from differentiating
    csn_κ(d) = κ sn_i sn_j γ + csn_i csn_j; sn_κ(d) = q(4 − κq²)^{1/2}/2
    comes from the chord. Valid for every κ including 0.

    Raises:
        SingularConfigurationError: For collisions or antipodal pairs
    """
    kappa = system.manifold.kappa
    chords = _require_regular(system, tol)
    pos = system.positions
    m = system.masses
    sn_s = np.array([sn(kappa, float(s)) for s in pos[:, 0]])
    csn_s = np.array([csn(kappa, float(s)) for s in pos[:, 0]])

    grad = np.zeros_like(pos)
    for (i, j), q in chords.items():
        sn_d = 0.5 * q * math.sqrt(4.0 - kappa * q * q)
        factor = m[i] * m[j] / sn_d**3
        gamma, dgamma_i, dgamma_j = _gamma_partials(pos[i], pos[j])

        grad[i, 0] += factor * (sn_s[i] * csn_s[j] - csn_s[i] * sn_s[j] * gamma)
        grad[j, 0] += factor * (sn_s[j] * csn_s[i] - csn_s[j] * sn_s[i] * gamma)
        grad[i, 1:] += factor * (-sn_s[i] * sn_s[j]) * dgamma_i
        grad[j, 1:] += factor * (-sn_s[i] * sn_s[j]) * dgamma_j

    return grad


class Potential:
    """Potential strategy consumed by the equations of motion"""

    name = "abstract"

    def value(self, system: BodySystem) -> float:
        raise NotImplementedError

    def gradient(self, system: BodySystem) -> np.ndarray:
        raise NotImplementedError


class CotangentPotential(Potential):
    """Cotangent potential; Newtonian at κ=0"""

    name = "cotangent"

    def __init__(self, tol: float = SINGULARITY_TOL):
        self.tol = tol

    def value(self, system: BodySystem) -> float:
        return u_cotangent(system, "chordal", self.tol)

    def gradient(self, system: BodySystem) -> np.ndarray:
        return grad_chart(system, self.tol)


class NewtonPotential(CotangentPotential):
    """Newtonian potential, defined on the flat manifold only"""

    name = "newton"

    def _check(self, system: BodySystem) -> None:
        if system.manifold.kappa != 0:
            raise InvalidInputError("the newton potential is only defined for kappa=0")

    def value(self, system: BodySystem) -> float:
        self._check(system)
        return u_newton(system, self.tol)

    def gradient(self, system: BodySystem) -> np.ndarray:
        self._check(system)
        return grad_chart(system, self.tol)


class FreePotential(Potential):
    """U ≡ 0 (geodesic motion)"""

    name = "none"

    def value(self, system: BodySystem) -> float:
        return 0.0

    def gradient(self, system: BodySystem) -> np.ndarray:
        return np.zeros_like(system.positions)


def get_potential(name: str, tol: float = SINGULARITY_TOL) -> Potential:
    """Potential strategy by scenario name (``cotangent``, ``newton``, ``none``)"""
    if name == "cotangent":
        return CotangentPotential(tol)
    if name == "newton":
        return NewtonPotential(tol)
    if name == "none":
        return FreePotential()
    raise InvalidInputError(f"unknown potential '{name}'")


def potential_continuity(
    chordal: Sequence[ChordalPoint],
    masses: Sequence[float],
    kappas: Sequence[float],
    dim: Optional[int] = None,
    tol: float = SINGULARITY_TOL,
) -> ConvergenceReport:
    """|U_κ − U_0| over a κ list with chords from the pole held fixed

    Each κ maps the chordal data to the chart through chord_to_geodesic; the
    reference U_0 is the Newtonian potential of the same chords read as flat
    polar/spherical radii. Failing κ entries become error rows.

    Raises:
        InvalidInputError: If the κ list contains 0
        SingularConfigurationError: If the flat reference configuration is singular
    """
    if any(k == 0 for k in kappas):
        raise InvalidInputError("potential continuity needs nonzero curvatures")
    dim = dim or (2 if chordal[0].theta is None else 3)

    flat = BodySystem(
        ManifoldSpec(dim, 0.0),
        masses,
        [chordal_to_chart(0.0, p).as_array() for p in chordal],
    )
    u_zero = u_newton(flat, tol)

    rows = []
    for kappa in kappas:
        try:
            curved = BodySystem(
                ManifoldSpec(dim, kappa),
                masses,
                [chordal_to_chart(kappa, p).as_array() for p in chordal],
            )
            u_kappa = u_cotangent(curved, "chordal", tol)
            rows.append(ConvergenceRow(kappa, abs(u_kappa - u_zero)))
        except CurvedNBodyError as e:
            logger.warning(f"potential continuity failed at kappa={kappa}: {e.message}")
            rows.append(ConvergenceRow(kappa, None, e.error_code, e.message))

    return build_report("potential", rows, u_zero=u_zero)
