"""Centralized Error Handling Mechanism

Provides the error handler and context manager used by the CLI
commands, plus the mapping from error families to process exit codes.

Author: Curved N-Body Team
License: MIT
"""

import logging
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Generator, List, Optional

from .base import (
    AcceptanceError,
    ConfigurationError,
    CurvedNBodyError,
    ErrorContext,
    ValidationError,
)
from .dynamics import DynamicsError
from .geometry import InvalidInputError


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ACCEPTANCE = 2
EXIT_SINGULARITY = 3

MAX_HISTORY = 100


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code of its family

    Args:
        error: Exception raised by a command

    Returns:
        1 for configuration and validation problems, 2 for acceptance
        violations, 3 for geometric/physical singularities, integration
        failures and anything unexpected.
    """
    if isinstance(error, AcceptanceError):
        return EXIT_ACCEPTANCE
    if isinstance(error, (ConfigurationError, ValidationError, InvalidInputError)):
        return EXIT_VALIDATION
    return EXIT_SINGULARITY


class ErrorHandler:
    """Converts exceptions to CurvedNBodyError, counts and logs them"""

    def __init__(self, component: str = "unknown"):
        self.component = component
        self.error_history: List[Dict[str, Any]] = []
        self.metrics: Dict[str, Any] = {
            "total_errors": 0,
            "recoverable_errors": 0,
            "fatal_errors": 0,
            "errors_by_type": {},
        }

    def handle_error(
        self,
        error: Exception,
        context: Optional[ErrorContext] = None,
        operation: Optional[str] = None,
        recoverable: bool = False,
    ) -> CurvedNBodyError:
        """Handle and convert exceptions to CurvedNBodyError instances"""
        if context is None:
            context = ErrorContext(component=self.component, operation=operation)
        else:
            context.component = context.component or self.component
            context.operation = context.operation or operation

        if isinstance(error, CurvedNBodyError):
            converted = error
            if not converted.context.component:
                converted.context.component = context.component
            if not converted.context.operation:
                converted.context.operation = context.operation
            converted.context.additional_data.update(context.additional_data)
        else:
            converted = self._convert_error(error, context, recoverable)

        self._update_metrics(converted)
        self._record_error(converted)
        self._log_error(converted)
        return converted

    def _convert_error(
        self, error: Exception, context: ErrorContext, recoverable: bool
    ) -> CurvedNBodyError:
        """Convert standard exceptions to the closest error family"""
        message = str(error) or type(error).__name__

        if isinstance(error, FileNotFoundError):
            return ValidationError(
                message=f"File not found: {message}",
                field="path",
                value=getattr(error, "filename", None),
                context=context,
                cause=error,
            )

        if isinstance(error, (ValueError, TypeError, KeyError)):
            return ValidationError(
                message=message, context=context, cause=error, recoverable=recoverable
            )

        if isinstance(error, (ArithmeticError, OverflowError)):
            return DynamicsError(
                message=f"Numerical failure: {message}",
                context=context,
                cause=error,
                recoverable=recoverable,
            )

        return CurvedNBodyError(
            message=message, context=context, cause=error, recoverable=recoverable
        )

    def _update_metrics(self, error: CurvedNBodyError) -> None:
        self.metrics["total_errors"] += 1
        if error.recoverable:
            self.metrics["recoverable_errors"] += 1
        else:
            self.metrics["fatal_errors"] += 1

        error_type = type(error).__name__
        by_type = self.metrics["errors_by_type"]
        by_type[error_type] = by_type.get(error_type, 0) + 1

    def _record_error(self, error: CurvedNBodyError) -> None:
        self.error_history.append(
            {
                "timestamp": datetime.now(timezone.utc).isoformat(),
                "error_type": type(error).__name__,
                "error_code": error.error_code,
                "message": error.message,
                "component": error.context.component,
                "operation": error.context.operation,
                "recoverable": error.recoverable,
            }
        )
        if len(self.error_history) > MAX_HISTORY:
            self.error_history = self.error_history[-MAX_HISTORY:]

    def _log_error(self, error: CurvedNBodyError) -> None:
        """Log error at WARNING when recoverable, ERROR otherwise"""
        level = logging.WARNING if error.recoverable else logging.ERROR
        logger.log(
            level,
            f"[{self.component}] {error.get_detailed_message()}",
            extra={
                "error_code": error.error_code,
                "error_type": type(error).__name__,
                "recoverable": error.recoverable,
                "exit_code": exit_code_for(error),
            },
        )

    def get_metrics(self) -> Dict[str, Any]:
        return {**self.metrics, "errors_by_type": dict(self.metrics["errors_by_type"])}

    def get_recent_errors(self, limit: int = 10) -> List[Dict[str, Any]]:
        return self.error_history[-limit:]


@contextmanager
def error_context(
    component: str, operation: str, **additional_data: Any
) -> Generator[ErrorHandler, None, None]:
    """Context manager converting and logging errors raised inside the block

    Args:
        component: Component name recorded in the error context
        operation: Operation name recorded in the error context
        **additional_data: Extra fields attached to the error context
    """
    handler = ErrorHandler(component)
    try:
        yield handler
    except Exception as e:
        context = ErrorContext(
            component=component,
            operation=operation,
            additional_data=dict(additional_data),
        )
        converted = handler.handle_error(e, context, operation)
        if converted is e:
            raise
        raise converted from e


__all__ = [
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_ACCEPTANCE",
    "EXIT_SINGULARITY",
    "ErrorHandler",
    "exit_code_for",
    "error_context",
]
