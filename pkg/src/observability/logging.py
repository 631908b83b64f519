"""Structured logging (JSON or plain) for the library and the CLI."""

import json
import logging
import sys
import time
from datetime import datetime, timezone
from typing import Any, Dict, Optional

# Extra record attributes promoted to top-level JSON fields
_STRUCTURED_FIELDS = ("command", "seed", "n_signals", "duration_ms", "status", "check")


class JSONFormatter(logging.Formatter):
    """Format log records as JSON for structured logging."""

    def format(self, record: logging.LogRecord) -> str:
        """Format a log record as JSON.

        Args:
            record: Log record to format

        Returns:
            JSON-formatted log string
        """
        log_data: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        for name in _STRUCTURED_FIELDS:
            if hasattr(record, name):
                log_data[name] = getattr(record, name)

        log_data["module"] = record.module
        log_data["function"] = record.funcName
        log_data["line"] = record.lineno

        return json.dumps(log_data, default=str)


def setup_logging(
    service_name: str = "rfi_qkd",
    log_level: str = "INFO",
    json_format: bool = False,
) -> None:
    """Setup logging for the application.

    Logs go to stderr so that CSV written to stdout stays parseable.

    Args:
        service_name: Name reported by the root logger's first record
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        json_format: If True, use JSON format; if False, use standard format
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, log_level.upper()))
    root_logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        formatter: logging.Formatter = JSONFormatter()
    else:
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    root_logger.addHandler(handler)

    root_logger.debug("logging configured", extra={"command": service_name})


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


class RunLogger:
    """Context manager logging the start and completion of one CLI command."""

    def __init__(
        self,
        logger: logging.Logger,
        command: str,
        seed: Optional[int] = None,
        n_signals: Optional[int] = None,
    ):
        self.logger = logger
        self.command = command
        self.seed = seed
        self.n_signals = n_signals
        self.start_time: Optional[float] = None

    def _extra(self) -> Dict[str, Any]:
        extra: Dict[str, Any] = {"command": self.command}
        if self.seed is not None:
            extra["seed"] = self.seed
        if self.n_signals is not None:
            extra["n_signals"] = self.n_signals
        return extra

    def __enter__(self) -> "RunLogger":
        self.start_time = time.perf_counter()
        self.logger.info(f"{self.command} started", extra=self._extra())
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        duration_ms = (time.perf_counter() - (self.start_time or 0.0)) * 1000
        extra = self._extra()
        extra["duration_ms"] = round(duration_ms, 3)
        extra["status"] = "success" if exc_type is None else "error"
        self.logger.info(f"{self.command} completed", extra=extra)
