"""Structured Logging for the Curved N-Body Toolkit

This module provides structured logging with contextual fields and
Japanese level names.

Author: Curved N-Body Team
License: MIT
"""

from .structured_logger import (
    LogContext,
    LogLevel,
    StructuredLogger,
    clear_run_context,
    create_logger,
    get_logger,
    get_run_context,
    set_run_context,
    setup_logging,
)

from .formatters import ConsoleFormatter, JSONFormatter, StructuredFormatter

from .context import (
    LoggingContext,
    get_current_operation,
    operation_context,
    run_context,
)

__all__ = [
    # Core logging
    "StructuredLogger",
    "LogContext",
    "LogLevel",
    "create_logger",
    "get_logger",
    "setup_logging",
    "set_run_context",
    "get_run_context",
    "clear_run_context",
    # Formatters
    "StructuredFormatter",
    "JSONFormatter",
    "ConsoleFormatter",
    # Context management
    "LoggingContext",
    "run_context",
    "operation_context",
    "get_current_operation",
]
