"""Structured Logger Implementation

Provides logging with contextual fields (run id, operation, curvature of
the current sweep entry, ...) and Japanese level names for the curved-space
N-body toolkit.

Author: Curved N-Body Team
License: MIT
"""

import logging
import threading
from contextvars import ContextVar
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Optional, Union

# Context variable for the fields of the current run/operation
_run_context: ContextVar[Optional[Dict[str, Any]]] = ContextVar(
    "run_context", default=None
)

# LogRecord attributes that cannot be passed through ``extra``
_RESERVED_RECORD_KEYS = frozenset(
    logging.LogRecord("", 0, "", 0, "", None, None).__dict__.keys()
) | {"message", "asctime"}


class LogLevel(Enum):
    """Log levels with Japanese descriptions"""

    DEBUG = ("DEBUG", "デバッグ", 10)
    INFO = ("INFO", "情報", 20)
    WARNING = ("WARNING", "警告", 30)
    ERROR = ("ERROR", "エラー", 40)
    CRITICAL = ("CRITICAL", "重要", 50)

    def __init__(self, name: str, japanese_name: str, level: int):
        self.level_name = name
        self.japanese_name = japanese_name
        self.level = level

    @classmethod
    def parse(cls, level: Union[str, int, "LogLevel"]) -> "LogLevel":
        """Resolve a level name, numeric level or LogLevel"""
        if isinstance(level, LogLevel):
            return level
        if isinstance(level, str):
            return cls[level.upper()]
        for log_level in cls:
            if log_level.level == level:
                return log_level
        return cls.INFO


@dataclass
class LogContext:
    """Structured log context information"""

    run_id: Optional[str] = None
    component: Optional[str] = None
    operation: Optional[str] = None
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    extra_data: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert context to dictionary"""
        return {
            "run_id": self.run_id,
            "component": self.component,
            "operation": self.operation,
            **self.extra_data,
        }

    def merged(self, data: Optional[Dict[str, Any]]) -> "LogContext":
        """Return a copy with the non-None entries of ``data`` applied"""
        merged = self.to_dict()
        for key, value in (data or {}).items():
            if value is not None:
                merged[key] = value
        return LogContext(
            run_id=merged.pop("run_id", None),
            component=merged.pop("component", None),
            operation=merged.pop("operation", None),
            timestamp=self.timestamp,
            extra_data=merged,
        )


class StructuredLogger:
    """Logger attaching structured fields to every record"""

    def __init__(
        self,
        name: str,
        logger: Optional[logging.Logger] = None,
        default_context: Optional[LogContext] = None,
    ):
        self.name = name
        self.logger = logger or logging.getLogger(name)
        self.default_context = default_context or LogContext(component=name)
        self._lock = threading.Lock()
        self.metrics = self._empty_metrics()

    @staticmethod
    def _empty_metrics() -> Dict[str, Any]:
        return {
            "total_logs": 0,
            "logs_by_level": {level.level_name: 0 for level in LogLevel},
            "error_count": 0,
            "warning_count": 0,
        }

    def _update_metrics(self, level: LogLevel) -> None:
        with self._lock:
            self.metrics["total_logs"] += 1
            self.metrics["logs_by_level"][level.level_name] += 1
            if level in (LogLevel.ERROR, LogLevel.CRITICAL):
                self.metrics["error_count"] += 1
            elif level == LogLevel.WARNING:
                self.metrics["warning_count"] += 1

    def _get_effective_context(self, context: Optional[LogContext]) -> LogContext:
        """Merge defaults, the active run context and an explicit context"""
        effective = self.default_context.merged(_run_context.get())
        if context:
            effective = effective.merged(context.to_dict())
        return effective

    def _log(
        self,
        level: LogLevel,
        message: str,
        context: Optional[LogContext] = None,
        japanese_message: Optional[str] = None,
        exc_info: bool = False,
        **kwargs,
    ) -> None:
        if not self.logger.isEnabledFor(level.level):
            return
        self._update_metrics(level)

        extra_data = {
            "level_japanese": level.japanese_name,
            "japanese_message": japanese_message,
            **self._get_effective_context(context).to_dict(),
            **kwargs,
        }
        extra = {}
        for key, value in extra_data.items():
            if value is None:
                continue
            extra[f"field_{key}" if key in _RESERVED_RECORD_KEYS else key] = value

        self.logger.log(level.level, message, exc_info=exc_info, extra=extra)

    def debug(self, message: str, context: Optional[LogContext] = None, **kwargs):
        self._log(LogLevel.DEBUG, message, context, **kwargs)

    def info(self, message: str, context: Optional[LogContext] = None, **kwargs):
        self._log(LogLevel.INFO, message, context, **kwargs)

    def warning(self, message: str, context: Optional[LogContext] = None, **kwargs):
        self._log(LogLevel.WARNING, message, context, **kwargs)

    def error(
        self,
        message: str,
        context: Optional[LogContext] = None,
        exc_info: bool = False,
        **kwargs,
    ):
        self._log(LogLevel.ERROR, message, context, exc_info=exc_info, **kwargs)

    def exception(self, message: str, context: Optional[LogContext] = None, **kwargs):
        """Log exception with traceback"""
        self._log(LogLevel.ERROR, message, context, exc_info=True, **kwargs)

    def log_operation_start(self, operation: str, **kwargs) -> None:
        self.info(
            f"Operation started: {operation}",
            context=LogContext(operation=operation),
            japanese_message=f"操作開始: {operation}",
            operation_status="started",
            **kwargs,
        )

    def log_operation_success(
        self, operation: str, duration_ms: Optional[float] = None, **kwargs
    ) -> None:
        self.info(
            f"Operation completed successfully: {operation}",
            context=LogContext(operation=operation),
            japanese_message=f"操作正常完了: {operation}",
            operation_status="success",
            duration_ms=duration_ms,
            **kwargs,
        )

    def log_operation_failure(
        self,
        operation: str,
        error: str,
        duration_ms: Optional[float] = None,
        **kwargs,
    ) -> None:
        self.error(
            f"Operation failed: {operation} - {error}",
            context=LogContext(operation=operation),
            japanese_message=f"操作失敗: {operation} - {error}",
            operation_status="failed",
            error_message=error,
            duration_ms=duration_ms,
            **kwargs,
        )

    def get_metrics(self) -> Dict[str, Any]:
        with self._lock:
            return {
                **self.metrics,
                "logs_by_level": dict(self.metrics["logs_by_level"]),
            }

    def reset_metrics(self) -> None:
        with self._lock:
            self.metrics = self._empty_metrics()


# Global logger registry
_loggers: Dict[str, StructuredLogger] = {}
_lock = threading.Lock()


def create_logger(
    name: str,
    level: Optional[Union[str, int, LogLevel]] = None,
    context: Optional[LogContext] = None,
) -> StructuredLogger:
    """Create and register a structured logger

    Library modules leave ``level`` unset so that the root configuration
    from setup_logging applies.
    """
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(LogLevel.parse(level).level)

    structured_logger = StructuredLogger(name, logger, context)
    with _lock:
        _loggers[name] = structured_logger
    return structured_logger


def get_logger(name: str) -> StructuredLogger:
    """Get or create a structured logger"""
    with _lock:
        existing = _loggers.get(name)
    return existing or create_logger(name)


def setup_logging(
    level: Union[str, int, LogLevel] = LogLevel.INFO,
    log_file: Optional[str] = None,
    json_format: bool = False,
    include_context: bool = True,
) -> logging.Logger:
    """Configure the root logger for one CLI invocation

    Console output goes to stderr so that stdout stays reserved for
    command results. A log file, when given, always receives JSON lines.
    """
    from .formatters import ConsoleFormatter, JSONFormatter

    log_level = LogLevel.parse(level)
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level.level)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler()
    if json_format:
        console_handler.setFormatter(JSONFormatter(include_context=include_context))
    else:
        console_handler.setFormatter(
            ConsoleFormatter(include_context=include_context, compact=True)
        )
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(JSONFormatter(include_context=include_context))
        root_logger.addHandler(file_handler)

    return root_logger


def set_run_context(**context) -> None:
    """Add fields to the context of the current execution"""
    current = dict(_run_context.get() or {})
    current.update(context)
    _run_context.set(current)


def get_run_context() -> Optional[Dict[str, Any]]:
    return _run_context.get()


def clear_run_context() -> None:
    _run_context.set(None)
