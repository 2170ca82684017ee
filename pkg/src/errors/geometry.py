"""Geometry-related Exception Classes

Provides exception classes raised by the unified trigonometric functions
and by chart, embedding and distance computations on constant-curvature
manifolds.

Author: Curved N-Body Team
License: MIT
"""

from typing import Any, Dict, Optional

from .base import CurvedNBodyError


class GeometryError(CurvedNBodyError):
    """Base exception class for geometry-related errors"""

    def _get_default_japanese_message(self) -> str:
        return "幾何計算でエラーが発生しました"

    def _get_default_error_code(self) -> str:
        return "GEOMETRY_ERROR"


class PoleError(GeometryError):
    """Raised when tn or ctn is evaluated at a pole of the function"""

    def __init__(self, message: str, function: str, kappa: float, s: Any, **kwargs):
        """Initialize pole error

        Args:
            message: Error message
            function: Name of the function with the pole ("tn" or "ctn")
            kappa: Curvature at which the function was evaluated
            s: Offending argument
            **kwargs: Additional CurvedNBodyError arguments
        """
        super().__init__(message, **kwargs)
        self.function = function
        self.kappa = kappa
        self.s = s

    def _get_default_japanese_message(self) -> str:
        return "関数の極で評価されました"

    def _get_default_error_code(self) -> str:
        return "POLE_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"function": self.function, "kappa": self.kappa, "s": str(self.s)})
        return result


class DomainError(GeometryError):
    """Raised when an argument lies outside the domain of an inverse function"""

    def __init__(
        self,
        message: str,
        argument: Any = None,
        bound: Optional[float] = None,
        **kwargs,
    ):
        super().__init__(message, **kwargs)
        self.argument = argument
        self.bound = bound

    def _get_default_japanese_message(self) -> str:
        return "引数が定義域の外にあります"

    def _get_default_error_code(self) -> str:
        return "DOMAIN_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"argument": str(self.argument), "bound": self.bound})
        return result


class ChartSingularityError(GeometryError):
    """Raised at a coordinate degeneracy of the polar/hyperspherical chart

    The chart degenerates where sn_κ(s) = 0 (the pole and, on spheres, the
    antipode of the pole) and, in dimension 3, where sin φ = 0.
    """

    def __init__(
        self,
        message: str,
        body: Optional[int] = None,
        coordinate: Optional[str] = None,
        value: Optional[float] = None,
        **kwargs,
    ):
        super().__init__(message, **kwargs)
        self.body = body
        self.coordinate = coordinate
        self.value = value

    def _get_default_japanese_message(self) -> str:
        return "座標系の特異点に達しました"

    def _get_default_error_code(self) -> str:
        return "CHART_SINGULARITY"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update(
            {"body": self.body, "coordinate": self.coordinate, "value": self.value}
        )
        return result


class InvalidInputError(GeometryError):
    """Raised for inputs that cannot describe points of the manifold"""

    def _get_default_japanese_message(self) -> str:
        return "入力が多様体上の点を表していません"

    def _get_default_error_code(self) -> str:
        return "INVALID_INPUT"


class ChartDomainError(InvalidInputError):
    """Raised for chart coordinates outside 0 ≤ s (≤ π κ^{-1/2} on spheres)"""

    def __init__(
        self,
        message: str,
        body: Optional[int] = None,
        value: Optional[float] = None,
        bound: Optional[float] = None,
        **kwargs,
    ):
        super().__init__(message, **kwargs)
        self.body = body
        self.value = value
        self.bound = bound

    def _get_default_japanese_message(self) -> str:
        return "座標が座標系の定義域の外にあります"

    def _get_default_error_code(self) -> str:
        return "CHART_DOMAIN_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"body": self.body, "value": self.value, "bound": self.bound})
        return result
