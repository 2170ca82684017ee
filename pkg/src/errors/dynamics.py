"""Dynamics-related Exception Classes

Provides exception classes for singular configurations, the Lagrangian
oracle and numerical integration.

Author: Curved N-Body Team
License: MIT
"""

from typing import Any, Dict, List, Optional

from .base import CurvedNBodyError


class DynamicsError(CurvedNBodyError):
    """Base exception class for dynamics-related errors"""

    def _get_default_japanese_message(self) -> str:
        return "運動方程式の評価中にエラーが発生しました"

    def _get_default_error_code(self) -> str:
        return "DYNAMICS_ERROR"


class SingularConfigurationError(DynamicsError):
    """Raised when a configuration lies in the singular set (collisions, antipodes)"""

    def __init__(self, message: str, reports: Optional[List[Any]] = None, **kwargs):
        """Initialize singular configuration error

        Args:
            message: Error message
            reports: SingularityReport entries describing the offending pairs
            **kwargs: Additional CurvedNBodyError arguments
        """
        super().__init__(message, **kwargs)
        self.reports = reports or []

    def _get_default_japanese_message(self) -> str:
        return "特異な配置（衝突または対蹠点）が検出されました"

    def _get_default_error_code(self) -> str:
        return "SINGULAR_CONFIGURATION"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result["reports"] = [
            report.to_dict() if hasattr(report, "to_dict") else str(report)
            for report in self.reports
        ]
        return result


class IntegrationError(DynamicsError):
    """Raised when an integration cannot be set up or continued"""

    def __init__(self, message: str, t: Optional[float] = None, **kwargs):
        super().__init__(message, **kwargs)
        self.t = t

    def _get_default_japanese_message(self) -> str:
        return "数値積分でエラーが発生しました"

    def _get_default_error_code(self) -> str:
        return "INTEGRATION_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result["t"] = self.t
        return result


class MetricInversionError(DynamicsError):
    """Raised when a metric tensor cannot be inverted"""

    def _get_default_japanese_message(self) -> str:
        return "計量テンソルを逆行列にできません"

    def _get_default_error_code(self) -> str:
        return "METRIC_INVERSION_ERROR"


class OracleCheckError(DynamicsError):
    """Raised in checked mode when an oracle invariant is violated"""

    def __init__(
        self,
        message: str,
        invariant: Optional[str] = None,
        residual: Optional[float] = None,
        **kwargs,
    ):
        super().__init__(message, **kwargs)
        self.invariant = invariant
        self.residual = residual

    def _get_default_japanese_message(self) -> str:
        return "検証モードで不変量の違反が検出されました"

    def _get_default_error_code(self) -> str:
        return "ORACLE_CHECK_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"invariant": self.invariant, "residual": self.residual})
        return result


class InsufficientSamplesError(DynamicsError):
    """Raised when a trajectory has too few samples for time differentiation"""

    def _get_default_japanese_message(self) -> str:
        return "サンプル数が不足しています"

    def _get_default_error_code(self) -> str:
        return "INSUFFICIENT_SAMPLES"
