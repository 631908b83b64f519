"""Observability module for rfi_qkd."""

from .logging import JSONFormatter, RunLogger, get_logger, setup_logging

__all__ = ["setup_logging", "get_logger", "RunLogger", "JSONFormatter"]
