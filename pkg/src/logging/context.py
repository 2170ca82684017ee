"""Logging Context Management

Provides context managers that attach run- and operation-level fields to
every record emitted inside them.

Author: Curved N-Body Team
License: MIT
"""

import time
import uuid
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Any, Dict, Generator, Optional

from .structured_logger import get_run_context, set_run_context, _run_context

_current_operation: ContextVar[Optional[str]] = ContextVar(
    "current_operation", default=None
)


@dataclass
class LoggingContext:
    """Fields attached while a context manager is active"""

    run_id: Optional[str] = None
    component: Optional[str] = None
    operation: Optional[str] = None
    fields: Dict[str, Any] = field(default_factory=dict)
    start_time: float = field(default_factory=time.perf_counter)

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.start_time) * 1000.0

    def as_fields(self) -> Dict[str, Any]:
        data = {
            "run_id": self.run_id,
            "component": self.component,
            "operation": self.operation,
            **self.fields,
        }
        return {key: value for key, value in data.items() if value is not None}


@contextmanager
def _scoped(context: LoggingContext) -> Generator[LoggingContext, None, None]:
    token = _run_context.set(dict(get_run_context() or {}))
    set_run_context(**context.as_fields())
    try:
        yield context
    finally:
        _run_context.reset(token)


@contextmanager
def run_context(
    run_id: Optional[str] = None, component: Optional[str] = None, **fields
) -> Generator[LoggingContext, None, None]:
    """Context manager for one CLI command invocation"""
    context = LoggingContext(
        run_id=run_id or uuid.uuid4().hex[:12], component=component, fields=fields
    )
    with _scoped(context):
        yield context


@contextmanager
def operation_context(
    operation: str, component: Optional[str] = None, **fields
) -> Generator[LoggingContext, None, None]:
    """Context manager for operation-level logging context

    Example:
        with operation_context("vf_convergence", kappa=1e-3):
            ...
    """
    inherited = get_run_context() or {}
    context = LoggingContext(
        run_id=inherited.get("run_id"),
        component=component or inherited.get("component"),
        operation=operation,
        fields=fields,
    )
    operation_token = _current_operation.set(operation)
    try:
        with _scoped(context):
            yield context
    finally:
        _current_operation.reset(operation_token)


def get_current_operation() -> Optional[str]:
    """Get the current operation name"""
    return _current_operation.get()
