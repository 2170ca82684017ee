"""Unified Circular/Hyperbolic Trigonometry

The κ-sine, κ-cosine, κ-tangent and κ-cotangent interpolate between the
circular functions (κ>0), the identity/constant (κ=0) and the hyperbolic
functions (κ<0). Near κs² = 0 they are evaluated by truncated Taylor
series in κs², so every function is continuous in (κ, s) jointly and
keeps full precision through κ=0.

All functions accept a scalar or a numpy array for the length argument and
return a float for scalar input.

Author: Curved N-Body Team
License: MIT
"""

from typing import Union

import numpy as np

from ..errors import DomainError, PoleError

ArrayLike = Union[float, np.ndarray]

# |κ|s² below this uses the series branch
SERIES_THRESHOLD = 1e-6

# relative pole threshold for tn/ctn denominators
POLE_TOL = 1e-15

# relative slack on |x| ≤ κ^{-1/2} before asn reports a domain error
ASN_DOMAIN_TOL = 1e-12


def _finish(value: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else value


def sigma(kappa: float) -> int:
    """Metric signature flag: +1 for κ ≥ 0 (Euclidean), −1 for κ < 0 (Minkowski)"""
    return 1 if kappa >= 0 else -1


def sn(kappa: float, s: ArrayLike) -> ArrayLike:
    """κ-sine: κ^{-1/2} sin(κ^{1/2}s), s, or |κ|^{-1/2} sinh(|κ|^{1/2}s)"""
    s_arr = np.asarray(s, dtype=float)
    x = kappa * s_arr * s_arr

    if kappa > 0:
        root = np.sqrt(kappa)
        closed = np.sin(root * s_arr) / root
    elif kappa < 0:
        root = np.sqrt(-kappa)
        closed = np.sinh(root * s_arr) / root
    else:
        return _finish(s_arr.copy(), s)

    series = s_arr * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0 * (1.0 - x / 72.0))))
    return _finish(np.where(np.abs(x) < SERIES_THRESHOLD, series, closed), s)


def csn(kappa: float, s: ArrayLike) -> ArrayLike:
    """κ-cosine: cos(κ^{1/2}s), 1, or cosh(|κ|^{1/2}s)"""
    s_arr = np.asarray(s, dtype=float)
    x = kappa * s_arr * s_arr

    if kappa > 0:
        closed = np.cos(np.sqrt(kappa) * s_arr)
    elif kappa < 0:
        closed = np.cosh(np.sqrt(-kappa) * s_arr)
    else:
        return _finish(np.ones_like(s_arr), s)

    series = 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0 * (1.0 - x / 56.0)))
    return _finish(np.where(np.abs(x) < SERIES_THRESHOLD, series, closed), s)


def _checked_ratio(
    num: np.ndarray, den: np.ndarray, kappa: float, s: ArrayLike, function: str
) -> ArrayLike:
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    poles = np.abs(den) < POLE_TOL * (1.0 + np.abs(num))
    if np.any(poles):
        offending = np.asarray(s, dtype=float)[poles] if np.ndim(s) else s
        raise PoleError(
            f"{function} has a pole at s={offending} for kappa={kappa}",
            function=function,
            kappa=kappa,
            s=offending,
        )
    return _finish(num / den, s)


def tn(kappa: float, s: ArrayLike) -> ArrayLike:
    """κ-tangent sn/csn

    Raises:
        PoleError: If csn_κ(s) vanishes
    """
    return _checked_ratio(sn(kappa, s), csn(kappa, s), kappa, s, "tn")


def ctn(kappa: float, s: ArrayLike) -> ArrayLike:
    """κ-cotangent csn/sn

    Raises:
        PoleError: If sn_κ(s) vanishes (s=0, and s=kπ/√κ on spheres)
    """
    return _checked_ratio(csn(kappa, s), sn(kappa, s), kappa, s, "ctn")


def d_sn(kappa: float, s: ArrayLike) -> ArrayLike:
    """d/ds sn_κ(s) = csn_κ(s)"""
    return csn(kappa, s)


def d_csn(kappa: float, s: ArrayLike) -> ArrayLike:
    """d/ds csn_κ(s) = −κ sn_κ(s)"""
    return _finish(-kappa * np.asarray(sn(kappa, s)), s)


def asn(kappa: float, x: ArrayLike, domain_tol: float = ASN_DOMAIN_TOL) -> ArrayLike:
    """Inverse κ-sine

    For κ>0 the principal branch is returned: s ∈ [0, (π/2)κ^{-1/2}] for
    x ≥ 0. Arguments within ``domain_tol`` (relative) beyond the bound
    κ^{-1/2} are clamped onto it.

    Args:
        kappa: Curvature
        x: Value of sn_κ to invert
        domain_tol: Relative clamp margin on the κ>0 bound

    Returns:
        s with sn_κ(s) = x

    Raises:
        DomainError: If κ>0 and |x| > κ^{-1/2} beyond the clamp margin
    """
    x_arr = np.asarray(x, dtype=float)
    if kappa == 0:
        return _finish(x_arr.copy(), x)

    y = kappa * x_arr * x_arr
    series = x_arr * (
        1.0
        + y / 6.0
        + 3.0 * y**2 / 40.0
        + 5.0 * y**3 / 112.0
        + 35.0 * y**4 / 1152.0
    )

    if kappa > 0:
        root = np.sqrt(kappa)
        arg = root * x_arr
        outside = np.abs(arg) > 1.0 + domain_tol
        if np.any(outside):
            offending = x_arr[outside] if x_arr.ndim else float(x_arr)
            raise DomainError(
                f"asn argument {offending} exceeds kappa^(-1/2)={1.0 / root} for kappa={kappa}",
                argument=offending,
                bound=1.0 / root,
            )
        closed = np.arcsin(np.clip(arg, -1.0, 1.0)) / root
    else:
        root = np.sqrt(-kappa)
        closed = np.arcsinh(root * x_arr) / root

    return _finish(np.where(np.abs(y) < SERIES_THRESHOLD, series, closed), x)
