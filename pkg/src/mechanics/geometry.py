"""Geometry of Constant-Curvature Manifolds

Charts, embeddings, distances, the metric tensor and its Christoffel
symbols for the 2- and 3-dimensional spheres (κ>0), the Euclidean
plane/space (κ=0) and the hyperbolic spheres (κ<0).

Chart coordinates are geodesic polar (s, φ) in dimension 2 and
hyperspherical (s, φ, θ) in dimension 3, with radial direction

    u = (cos φ, sin φ)                          (dim 2)
    u = (sin φ sin θ, sin φ cos θ, cos φ)       (dim 3)

The embedding puts a point at (sn_κ(s)·u, w). In the center-origin frame
w = |κ|^{-1/2} csn_κ(s); the pole-shifted frame subtracts |κ|^{-1/2} so the
North Pole sits at the origin, and is evaluated as w = −2σ|κ|^{1/2}sn_κ²(s/2)
to avoid cancellation. At κ=0 the pole-shifted frame degenerates to the
flat polar/spherical map with w = 0.

Author: Curved N-Body Team
License: MIT
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..errors import ChartDomainError, ChartSingularityError, DomainError, InvalidInputError
from .ktrig import asn, csn, ctn, sigma, sn

CHART_TOL = 1e-10
ACSN_CLAMP = 1e-12

# relative slack on s ≤ π κ^{-1/2} before a sphere point counts as off-chart
CHART_DOMAIN_TOL = 1e-12


class Frame(str, Enum):
    """Extrinsic coordinate frames"""

    POLE_SHIFTED = "pole-shifted"
    CENTER_ORIGIN = "center-origin"


@dataclass(frozen=True)
class ManifoldSpec:
    """A constant-curvature manifold of dimension 2 or 3"""

    dim: int
    kappa: float

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise InvalidInputError(f"dim must be 2 or 3, got {self.dim}")
        if not math.isfinite(self.kappa):
            raise InvalidInputError(f"kappa must be finite, got {self.kappa}")

    @property
    def sigma(self) -> int:
        return sigma(self.kappa)

    @property
    def radius(self) -> Optional[float]:
        """|κ|^{-1/2}, or None on the flat manifold"""
        return None if self.kappa == 0 else 1.0 / math.sqrt(abs(self.kappa))


@dataclass(frozen=True)
class ChartPoint:
    """Intrinsic coordinates of one point; ``theta`` is set iff dim=3"""

    s: float
    phi: float
    theta: Optional[float] = None

    @property
    def dim(self) -> int:
        return 2 if self.theta is None else 3

    def as_array(self) -> np.ndarray:
        values = [self.s, self.phi] if self.theta is None else [self.s, self.phi, self.theta]
        return np.array(values, dtype=float)

    @classmethod
    def from_array(cls, values) -> "ChartPoint":
        values = [float(v) for v in values]
        if len(values) == 2:
            return cls(values[0], values[1])
        if len(values) == 3:
            return cls(values[0], values[1], values[2])
        raise InvalidInputError(f"chart point needs 2 or 3 coordinates, got {len(values)}")


@dataclass(frozen=True)
class ChordalPoint:
    """Chordal distance from the North Pole plus the chart angles"""

    tau: float
    phi: float
    theta: Optional[float] = None


@dataclass(frozen=True)
class ExtrinsicPoint:
    """Ambient coordinates (x, y[, z], w) with signature flag"""

    coords: Tuple[float, ...]
    sigma: int
    frame: Frame

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


def _check_point(m: ManifoldSpec, p: ChartPoint) -> None:
    if p.dim != m.dim:
        raise InvalidInputError(f"chart point of dim {p.dim} on a dim-{m.dim} manifold")
    check_chart_domain(m, p.as_array())


def max_chart_radius(kappa: float) -> float:
    """π κ^{-1/2} (the antipode of the pole) on spheres, unbounded otherwise"""
    return math.pi / math.sqrt(kappa) if kappa > 0 else math.inf


def check_chart_domain(m: ManifoldSpec, q: np.ndarray, body: Optional[int] = None) -> None:
    """Raise ChartDomainError for s < 0 or, on spheres, s beyond the antipode

    Non-finite coordinates are left to the caller.
    """
    s = float(q[0])
    bound = max_chart_radius(m.kappa)
    where = f" for body {body}" if body is not None else ""
    if s < 0.0:
        raise ChartDomainError(f"chart radius s={s} is negative{where}", body=body, value=s, bound=0.0)
    if s > bound * (1.0 + CHART_DOMAIN_TOL):
        raise ChartDomainError(
            f"chart radius s={s} beyond the antipode s={bound:.12g} for kappa={m.kappa}{where}",
            body=body,
            value=s,
            bound=bound,
        )


def radial_direction(phi: float, theta: Optional[float] = None) -> np.ndarray:
    """Unit direction u(φ[, θ]) of the chart"""
    if theta is None:
        return np.array([math.cos(phi), math.sin(phi)])
    sp = math.sin(phi)
    return np.array([sp * math.sin(theta), sp * math.cos(theta), math.cos(phi)])


def direction_derivatives(phi: float, theta: Optional[float] = None) -> dict:
    """u and its first and second angular derivatives

    Keys: ``u``, ``u_phi``, ``u_theta``, ``u_phiphi``, ``u_phitheta``,
    ``u_thetatheta``. The θ entries are zero vectors in dimension 2.
    """
    u = radial_direction(phi, theta)
    if theta is None:
        zero = np.zeros(2)
        return {
            "u": u,
            "u_phi": np.array([-math.sin(phi), math.cos(phi)]),
            "u_theta": zero,
            "u_phiphi": -u,
            "u_phitheta": zero,
            "u_thetatheta": zero,
        }

    sp, cp = math.sin(phi), math.cos(phi)
    st, ct = math.sin(theta), math.cos(theta)
    return {
        "u": u,
        "u_phi": np.array([cp * st, cp * ct, -sp]),
        "u_theta": np.array([sp * ct, -sp * st, 0.0]),
        "u_phiphi": -u,
        "u_phitheta": np.array([cp * ct, -cp * st, 0.0]),
        "u_thetatheta": np.array([-sp * st, -sp * ct, 0.0]),
    }


def pole_offset_coordinate(kappa: float, s: float) -> float:
    """Last embedding coordinate in the pole-shifted frame"""
    if kappa == 0:
        return 0.0
    half = sn(kappa, 0.5 * s)
    return -2.0 * sigma(kappa) * math.sqrt(abs(kappa)) * half * half


def chart_to_extrinsic(
    m: ManifoldSpec, p: ChartPoint, frame: Frame = Frame.POLE_SHIFTED
) -> ExtrinsicPoint:
    """Embed a chart point in Euclidean (κ≥0) or Minkowski (κ<0) space

    Raises:
        InvalidInputError: For the center-origin frame at κ=0, which has no
            finite center
        ChartDomainError: For s < 0, or s > π κ^{-1/2} on a sphere
    """
    _check_point(m, p)
    frame = Frame(frame)
    spatial = sn(m.kappa, p.s) * radial_direction(p.phi, p.theta)

    if frame is Frame.CENTER_ORIGIN:
        if m.kappa == 0:
            raise InvalidInputError(
                "center-origin embedding undefined at kappa=0; use the pole-shifted frame"
            )
        last = csn(m.kappa, p.s) / math.sqrt(abs(m.kappa))
    else:
        last = pole_offset_coordinate(m.kappa, p.s)

    return ExtrinsicPoint(tuple(spatial.tolist()) + (float(last),), m.sigma, frame)


def embedding_jacobian(m: ManifoldSpec, q: np.ndarray) -> np.ndarray:
    """∂(x, y[, z], w)/∂(s, φ[, θ]) evaluated from the coordinate differentials

    The last row is the same in both frames (they differ by a constant).
    """
    s = float(q[0])
    theta = float(q[2]) if m.dim == 3 else None
    d = direction_derivatives(float(q[1]), theta)
    sn_s = sn(m.kappa, s)

    jac = np.zeros((m.dim + 1, m.dim))
    jac[: m.dim, 0] = csn(m.kappa, s) * d["u"]
    jac[: m.dim, 1] = sn_s * d["u_phi"]
    if m.dim == 3:
        jac[: m.dim, 2] = sn_s * d["u_theta"]
    if m.kappa != 0:
        jac[m.dim, 0] = -m.sigma * math.sqrt(abs(m.kappa)) * sn_s
    return jac


def pullback_metric(m: ManifoldSpec, q: np.ndarray) -> np.ndarray:
    """Jᵀ diag(1, …, 1, σ) J: the ambient line element pulled back to the chart"""
    jac = embedding_jacobian(m, q)
    signature = np.ones(m.dim + 1)
    signature[-1] = m.sigma
    return jac.T @ (signature[:, None] * jac)


def chordal_distance(a: ExtrinsicPoint, b: ExtrinsicPoint) -> float:
    """Signature-σ distance [Σ(Δx)² + σ(Δw)²]^{1/2}

    Raises:
        InvalidInputError: For mismatched frames/signatures or a negative
            radicand (off-manifold input)
    """
    if a.sigma != b.sigma or a.frame != b.frame or len(a.coords) != len(b.coords):
        raise InvalidInputError("chordal distance needs points of one manifold and frame")
    diff = a.vector - b.vector
    spatial = float(np.dot(diff[:-1], diff[:-1]))
    radicand = spatial + a.sigma * float(diff[-1] ** 2)
    if radicand < 0:
        scale = spatial + float(diff[-1] ** 2)
        if radicand < -1e-12 * max(scale, 1e-300):
            raise InvalidInputError(
                f"negative chordal radicand {radicand}: points are not on one manifold"
            )
        radicand = 0.0
    return math.sqrt(radicand)


def angular_cosine(a: ChartPoint, b: ChartPoint) -> float:
    """γ_ab = cos Δφ (dim 2) or cos φa cos φb + sin φa sin φb cos Δθ (dim 3)"""
    if a.theta is None:
        return math.cos(a.phi - b.phi)
    return math.cos(a.phi) * math.cos(b.phi) + math.sin(a.phi) * math.sin(b.phi) * math.cos(
        a.theta - b.theta
    )


def _inverse_csn(kappa: float, c: float, clamp: float) -> float:
    """|κ|^{-1/2}·csn⁻¹ on the principal branch"""
    root = math.sqrt(abs(kappa))
    if kappa > 0:
        if abs(c) > 1.0 + clamp:
            raise DomainError(
                f"inverse csn argument {c} outside [-1, 1] for kappa={kappa}",
                argument=c,
                bound=1.0,
            )
        return math.acos(min(1.0, max(-1.0, c))) / root
    if c < 1.0 - clamp:
        raise DomainError(
            f"inverse csn argument {c} below 1 for kappa={kappa}", argument=c, bound=1.0
        )
    return math.acosh(max(1.0, c)) / root


def geodesic_distance(
    m: ManifoldSpec, a: ChartPoint, b: ChartPoint, clamp: float = ACSN_CLAMP
) -> float:
    """Geodesic distance via the center-origin dot product

    κ≠0: d = |κ|^{-1/2} csn⁻¹(κ q_a·q_b) with the signature-σ inner product.
    κ=0: flat law of cosines in the same chart.

    Raises:
        DomainError: If the inverse-csn argument leaves its domain by more
            than ``clamp``
    """
    _check_point(m, a)
    _check_point(m, b)
    if m.kappa == 0:
        sq = a.s * a.s + b.s * b.s - 2.0 * a.s * b.s * angular_cosine(a, b)
        return math.sqrt(max(sq, 0.0))

    qa = chart_to_extrinsic(m, a, Frame.CENTER_ORIGIN).vector
    qb = chart_to_extrinsic(m, b, Frame.CENTER_ORIGIN).vector
    dot = float(np.dot(qa[:-1], qb[:-1])) + m.sigma * qa[-1] * qb[-1]
    return _inverse_csn(m.kappa, m.kappa * dot, clamp)


def geodesic_distance_chart(
    m: ManifoldSpec, a: ChartPoint, b: ChartPoint, clamp: float = ACSN_CLAMP
) -> float:
    """Geodesic distance from κ sn sn γ + csn csn, without embedding"""
    _check_point(m, a)
    _check_point(m, b)
    if m.kappa == 0:
        return geodesic_distance(m, a, b)
    c = m.kappa * sn(m.kappa, a.s) * sn(m.kappa, b.s) * angular_cosine(a, b) + csn(
        m.kappa, a.s
    ) * csn(m.kappa, b.s)
    return _inverse_csn(m.kappa, c, clamp)


def chord_to_geodesic(kappa: float, tau: float) -> float:
    """s = 2 sn_κ⁻¹(τ/2)

    Raises:
        DomainError: If κ>0 and τ exceeds the diameter 2κ^{-1/2}
    """
    return 2.0 * asn(kappa, 0.5 * tau)


def geodesic_to_chord(kappa: float, s: float) -> float:
    """τ = 2 sn_κ(s/2)"""
    return 2.0 * sn(kappa, 0.5 * s)


def chordal_to_chart(kappa: float, p: ChordalPoint) -> ChartPoint:
    """Chart point at chordal distance τ from the pole along (φ[, θ])"""
    if p.tau < 0:
        raise InvalidInputError(f"chordal distance must be nonnegative, got {p.tau}")
    return ChartPoint(chord_to_geodesic(kappa, p.tau), p.phi, p.theta)


def pair_distance(m: ManifoldSpec, a: ChartPoint, b: ChartPoint) -> Tuple[float, float]:
    """(chordal, geodesic) distance of two points through the pole-shifted chord

    Well conditioned for nearby points and continuous through κ=0.
    """
    q = chordal_distance(chart_to_extrinsic(m, a), chart_to_extrinsic(m, b))
    return q, chord_to_geodesic(m.kappa, q)


def check_chart_regular(
    m: ManifoldSpec, q: np.ndarray, tol: float = CHART_TOL, body: Optional[int] = None
) -> None:
    """Raise ChartSingularityError where sn_κ(s) or sin φ (dim 3) falls below ``tol``

    Points outside the chart domain raise ChartDomainError first.
    """
    check_chart_domain(m, q, body)
    sn_s = sn(m.kappa, float(q[0]))
    if abs(sn_s) < tol:
        raise ChartSingularityError(
            f"sn_kappa(s)={sn_s:.3e} below {tol:g}"
            + (f" for body {body}" if body is not None else ""),
            body=body,
            coordinate="s",
            value=float(q[0]),
        )
    if m.dim == 3:
        sin_phi = math.sin(float(q[1]))
        if abs(sin_phi) < tol:
            raise ChartSingularityError(
                f"sin(phi)={sin_phi:.3e} below {tol:g}"
                + (f" for body {body}" if body is not None else ""),
                body=body,
                coordinate="phi",
                value=float(q[1]),
            )


def metric(
    m: ManifoldSpec, p: ChartPoint, tol: float = CHART_TOL
) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form metric diag(1, sn², [sn² sin²φ]) and its inverse

    Raises:
        ChartSingularityError: At sn_κ(s)=0 or sin φ=0
    """
    _check_point(m, p)
    q = p.as_array()
    check_chart_regular(m, q, tol)
    sn2 = sn(m.kappa, p.s) ** 2
    diag = [1.0, sn2] if m.dim == 2 else [1.0, sn2, sn2 * math.sin(p.phi) ** 2]
    g = np.diag(diag)
    return g, np.diag([1.0 / v for v in diag])


def christoffel_closed(m: ManifoldSpec, p: ChartPoint, tol: float = CHART_TOL) -> np.ndarray:
    """Closed-form Christoffel symbols Γ[s][l][j] (0-based, s upper index)

    Raises:
        ChartSingularityError: At the poles of ctn_κ(s) or cot φ
    """
    _check_point(m, p)
    check_chart_regular(m, p.as_array(), tol)
    k = m.kappa
    sn_s, csn_s = sn(k, p.s), csn(k, p.s)
    ctn_s = ctn(k, p.s)

    gamma = np.zeros((m.dim, m.dim, m.dim))
    gamma[0, 1, 1] = -sn_s * csn_s
    gamma[1, 0, 1] = gamma[1, 1, 0] = ctn_s

    if m.dim == 3:
        sp, cp = math.sin(p.phi), math.cos(p.phi)
        gamma[0, 2, 2] = -sn_s * csn_s * sp * sp
        gamma[1, 2, 2] = -sp * cp
        gamma[2, 0, 2] = gamma[2, 2, 0] = ctn_s
        gamma[2, 1, 2] = gamma[2, 2, 1] = cp / sp

    return gamma


def chart_to_planar(p: ChartPoint) -> np.ndarray:
    """κ=0 polar/spherical map (x, y[, z]) = s·u"""
    return p.s * radial_direction(p.phi, p.theta)


def planar_to_chart(x: np.ndarray) -> ChartPoint:
    """Inverse of chart_to_planar on s>0"""
    x = np.asarray(x, dtype=float)
    s = float(np.linalg.norm(x))
    if x.size == 2:
        return ChartPoint(s, math.atan2(x[1], x[0]))
    if s == 0:
        raise ChartSingularityError("planar origin has no spherical angles", coordinate="s", value=0.0)
    phi = math.acos(max(-1.0, min(1.0, x[2] / s)))
    return ChartPoint(s, phi, math.atan2(x[0], x[1]))


def chart_velocity_to_planar(q: np.ndarray, qdot: np.ndarray) -> np.ndarray:
    """ḟ = ṡu + s(u_φ φ̇ + u_θ θ̇) for the flat chart"""
    theta = float(q[2]) if len(q) == 3 else None
    d = direction_derivatives(float(q[1]), theta)
    theta_dot = float(qdot[2]) if len(q) == 3 else 0.0
    return qdot[0] * d["u"] + q[0] * (d["u_phi"] * qdot[1] + d["u_theta"] * theta_dot)


def chart_acceleration_to_planar(q: np.ndarray, qdot: np.ndarray, qddot: np.ndarray) -> np.ndarray:
    """Second time derivative of f = s·u(φ, θ) from chart accelerations"""
    theta = float(q[2]) if len(q) == 3 else None
    d = direction_derivatives(float(q[1]), theta)
    s, sd, pd = q[0], qdot[0], qdot[1]
    td = float(qdot[2]) if len(q) == 3 else 0.0
    tdd = float(qddot[2]) if len(q) == 3 else 0.0

    angular_rate = d["u_phi"] * pd + d["u_theta"] * td
    return (
        qddot[0] * d["u"]
        + 2.0 * sd * angular_rate
        + s * (d["u_phi"] * qddot[1] + d["u_theta"] * tdd)
        + s * (d["u_phiphi"] * pd * pd + 2.0 * d["u_phitheta"] * pd * td + d["u_thetatheta"] * td * td)
    )
