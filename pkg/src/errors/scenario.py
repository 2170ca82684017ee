"""Scenario-related Exception Classes

Provides exception classes for scenario file parsing and validation.

Author: Curved N-Body Team
License: MIT
"""

from typing import Any, Dict, List, Optional

from .base import ValidationError


class ScenarioError(ValidationError):
    """Base exception class for scenario file errors"""

    def __init__(self, message: str, path: Optional[str] = None, **kwargs):
        super().__init__(message, **kwargs)
        self.path = path

    def _get_default_japanese_message(self) -> str:
        return "シナリオファイルの読み込みに失敗しました"

    def _get_default_error_code(self) -> str:
        return "SCENARIO_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result["path"] = self.path
        return result


class ScenarioParseError(ScenarioError):
    """Raised when a scenario file is not well-formed JSON"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        **kwargs,
    ):
        super().__init__(message, **kwargs)
        self.line = line
        self.column = column

    def _get_default_japanese_message(self) -> str:
        return "シナリオファイルの構文エラーです"

    def _get_default_error_code(self) -> str:
        return "SCENARIO_PARSE_ERROR"

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"line": self.line, "column": self.column})
        return result


class ScenarioValidationError(ScenarioError):
    """Raised when a scenario file fails schema validation

    ``diagnostics`` holds one entry per failing field with its location
    (e.g. ``bodies[1].mass``) and message.
    """

    def __init__(
        self, message: str, diagnostics: Optional[List[Dict[str, str]]] = None, **kwargs
    ):
        diagnostics = diagnostics or []
        kwargs.setdefault(
            "validation_errors", [f"{d['loc']}: {d['msg']}" for d in diagnostics]
        )
        super().__init__(message, **kwargs)
        self.diagnostics = diagnostics

    def _get_default_japanese_message(self) -> str:
        return "シナリオファイルの検証エラーです"

    def _get_default_error_code(self) -> str:
        return "SCENARIO_VALIDATION_ERROR"
