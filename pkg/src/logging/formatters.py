"""Custom Log Formatters

Provides JSON-lines and console formatters for structured records.

Author: Curved N-Body Team
License: MIT
"""

import json
import logging
import traceback
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

# Standard LogRecord attributes never copied into the structured payload
_STANDARD_ATTRIBUTES = frozenset(
    {
        "name",
        "msg",
        "args",
        "levelname",
        "levelno",
        "pathname",
        "filename",
        "module",
        "lineno",
        "funcName",
        "created",
        "msecs",
        "relativeCreated",
        "thread",
        "threadName",
        "processName",
        "process",
        "taskName",
        "exc_info",
        "exc_text",
        "stack_info",
        "message",
        "asctime",
    }
)

CONTEXT_FIELDS = ("run_id", "component", "operation")


class StructuredFormatter(logging.Formatter):
    """Base structured formatter with context support"""

    def __init__(
        self,
        include_context: bool = True,
        include_japanese: bool = True,
        extra_fields: Optional[List[str]] = None,
    ):
        super().__init__()
        self.include_context = include_context
        self.include_japanese = include_japanese
        self.extra_fields = extra_fields or []

    def build_payload(self, record: logging.LogRecord) -> Dict[str, Any]:
        """Collect the structured fields of a record"""
        timestamp = datetime.fromtimestamp(record.created, tz=timezone.utc)
        log_data: Dict[str, Any] = {
            "timestamp": timestamp.isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for key, value in record.__dict__.items():
            if key in _STANDARD_ATTRIBUTES or key.startswith("_") or key in log_data:
                continue
            if not self.include_japanese and key in ("level_japanese", "japanese_message"):
                continue
            if not self.include_context and key in CONTEXT_FIELDS:
                continue
            try:
                json.dumps(value)
                log_data[key] = value
            except (TypeError, ValueError):
                log_data[key] = str(value)

        if record.exc_info and record.exc_info[0] is not None:
            log_data["exception"] = {
                "type": record.exc_info[0].__name__,
                "message": str(record.exc_info[1]),
                "traceback": traceback.format_exception(*record.exc_info),
            }

        return log_data

    def format(self, record: logging.LogRecord) -> str:
        return self._format_output(self.build_payload(record))

    def _format_output(self, log_data: Dict[str, Any]) -> str:
        """Format the output - to be overridden by subclasses"""
        return str(log_data)


class JSONFormatter(StructuredFormatter):
    """JSON formatter, one object per line"""

    def __init__(
        self,
        include_context: bool = True,
        include_japanese: bool = True,
        extra_fields: Optional[List[str]] = None,
        ensure_ascii: bool = False,
    ):
        super().__init__(include_context, include_japanese, extra_fields)
        self.ensure_ascii = ensure_ascii

    def _format_output(self, log_data: Dict[str, Any]) -> str:
        return json.dumps(
            log_data,
            ensure_ascii=self.ensure_ascii,
            default=str,
            separators=(",", ":"),
        )


class ConsoleFormatter(StructuredFormatter):
    """Human-readable console formatter"""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(
        self,
        include_context: bool = True,
        include_japanese: bool = False,
        extra_fields: Optional[List[str]] = None,
        use_colors: bool = False,
        compact: bool = False,
    ):
        super().__init__(include_context, include_japanese, extra_fields)
        self.use_colors = use_colors
        self.compact = compact

    def _format_output(self, log_data: Dict[str, Any]) -> str:
        level = log_data.get("level", "INFO")
        if self.use_colors and level in self.COLORS:
            level = f"{self.COLORS[level]}{level}{self.RESET}"

        timestamp = log_data.get("timestamp", "")
        if self.compact:
            parts = [timestamp[:19], level, log_data.get("message", "")]
        else:
            parts = [timestamp, f"[{level}]", f"{log_data.get('logger', '')}:",
                     log_data.get("message", "")]
        line = " ".join(filter(None, parts))

        skip = {"timestamp", "level", "logger", "message", "exception", "level_japanese"}
        fields = [
            f"{key}={value}"
            for key, value in log_data.items()
            if key not in skip and (key != "japanese_message" or self.include_japanese)
        ]
        if fields:
            line += f" [{', '.join(fields)}]" if self.compact else f"\n  Context: {', '.join(fields)}"

        exc = log_data.get("exception")
        if exc:
            line += f"\n  Exception: {exc['type']}: {exc['message']}"
            if not self.compact:
                line += "\n  " + "  ".join(exc["traceback"])

        return line
