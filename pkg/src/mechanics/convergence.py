"""Convergence Reports and Order Fitting

Error tables E(κ) over a curvature sweep, least-squares slopes of
log E against log|κ|, and monotonicity checks per sign of κ.

Author: Curved N-Body Team
License: MIT
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

# errors below this are treated as rounding floor and excluded from fits
ERROR_FLOOR = 100.0 * np.finfo(float).eps

MONOTONE_NOISE = 0.05

STATUS_OK = "ok"


@dataclass
class ConvergenceRow:
    """One κ entry of a sweep; ``error`` is None when the evaluation failed"""

    kappa: float
    error: Optional[float]
    status: str = STATUS_OK
    message: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK and self.error is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kappa": self.kappa,
            "error": self.error,
            "status": self.status,
            "message": self.message,
        }


@dataclass
class SlopeFit:
    """Least-squares line log E = slope·log|κ| + intercept"""

    slope: float
    intercept: float
    residual: float
    points: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "points": self.points,
        }


@dataclass
class SideReport:
    """Sub-report of one sign of κ"""

    sign: int
    rows: List[ConvergenceRow]
    fit: Optional[SlopeFit]
    monotone: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sign": self.sign,
            "rows": [row.to_dict() for row in self.rows],
            "fit": self.fit.to_dict() if self.fit else None,
            "monotone": self.monotone,
        }


@dataclass
class ConvergenceReport:
    """Error table of one experiment with fitted orders"""

    experiment: str
    mode: Optional[str]
    rows: List[ConvergenceRow]
    fit: Optional[SlopeFit]
    positive: Optional[SideReport] = None
    negative: Optional[SideReport] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.experiment if not self.mode else f"{self.experiment}_{self.mode}"

    @property
    def failures(self) -> List[ConvergenceRow]:
        return [row for row in self.rows if not row.ok]

    @property
    def slope_gap(self) -> Optional[float]:
        """|slope(κ>0) − slope(κ<0)| when both sides were fitted"""
        if self.positive and self.negative and self.positive.fit and self.negative.fit:
            return abs(self.positive.fit.slope - self.negative.fit.slope)
        return None

    @property
    def monotone(self) -> bool:
        return all(side.monotone for side in self.sides())

    def sides(self) -> List[SideReport]:
        return [side for side in (self.positive, self.negative) if side is not None]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "mode": self.mode,
            "rows": [row.to_dict() for row in self.rows],
            "fit": self.fit.to_dict() if self.fit else None,
            "positive": self.positive.to_dict() if self.positive else None,
            "negative": self.negative.to_dict() if self.negative else None,
            "slope_gap": self.slope_gap,
            "monotone": self.monotone,
            "failures": len(self.failures),
            "metadata": self.metadata,
        }


def error_norm(f_kappa: np.ndarray, f_zero: np.ndarray) -> float:
    """Component-wise max of |F_κ − F_0| / max(1, |F_0|)"""
    f_kappa = np.asarray(f_kappa, dtype=float)
    f_zero = np.asarray(f_zero, dtype=float)
    scale = np.maximum(1.0, np.abs(f_zero))
    return float(np.max(np.abs(f_kappa - f_zero) / scale))


def fit_loglog_slope(
    kappas: Sequence[float], errors: Sequence[float], floor: float = ERROR_FLOOR
) -> Optional[SlopeFit]:
    """Fit log E against log|κ|, skipping entries at or below ``floor``

    Returns:
        The fit, or None with fewer than two usable points
    """
    pairs = [
        (abs(k), e)
        for k, e in zip(kappas, errors)
        if e is not None and math.isfinite(e) and e > floor and k != 0
    ]
    if len(pairs) < 2:
        return None

    x = np.log(np.array([p[0] for p in pairs]))
    y = np.log(np.array([p[1] for p in pairs]))
    coeffs = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((np.polyval(coeffs, x) - y) ** 2)))
    return SlopeFit(float(coeffs[0]), float(coeffs[1]), residual, len(pairs))


def is_monotone_decreasing(
    kappas: Sequence[float], errors: Sequence[float], noise: float = MONOTONE_NOISE
) -> bool:
    """E decreases as |κ| decreases, each step allowed to grow by ``noise``

    Entries at the rounding floor end the check: once the error has reached
    it, further decrease cannot be observed.
    """
    ordered = sorted(
        ((abs(k), e) for k, e in zip(kappas, errors) if e is not None),
        key=lambda pair: -pair[0],
    )
    for (_, previous), (_, current) in zip(ordered, ordered[1:]):
        if previous <= ERROR_FLOOR:
            break
        if current > previous * (1.0 + noise):
            return False
    return True


def _side(rows: List[ConvergenceRow], sign: int) -> Optional[SideReport]:
    selected = [row for row in rows if (row.kappa > 0) == (sign > 0)]
    if not selected:
        return None
    good = [row for row in selected if row.ok]
    return SideReport(
        sign=sign,
        rows=selected,
        fit=fit_loglog_slope([r.kappa for r in good], [r.error for r in good]),
        monotone=is_monotone_decreasing([r.kappa for r in good], [r.error for r in good]),
    )


def build_report(
    experiment: str,
    rows: Iterable[ConvergenceRow],
    mode: Optional[str] = None,
    **metadata: Any,
) -> ConvergenceReport:
    """Assemble rows into a report with overall and per-sign fits"""
    rows = list(rows)
    good = [row for row in rows if row.ok]
    return ConvergenceReport(
        experiment=experiment,
        mode=mode,
        rows=rows,
        fit=fit_loglog_slope([r.kappa for r in good], [r.error for r in good]),
        positive=_side(rows, +1),
        negative=_side(rows, -1),
        metadata=metadata,
    )


def geometric_kappas(
    exponents: Iterable[int], signs: Sequence[int] = (1, -1)
) -> List[float]:
    """±10^e for every exponent, positive entries first"""
    return [float(sign) * 10.0 ** e for sign in signs for e in exponents]
