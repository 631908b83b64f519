"""Custom exception hierarchy for rfi_qkd.

This module provides a structured exception hierarchy that:
1. Separates precondition violations from statistical shortfalls
2. Provides consistent error messages and codes
3. Maps cleanly to CLI exit codes
4. Includes context for debugging and logging
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Optional, Tuple


class ErrorCode(str, Enum):
    """Standard error codes for categorizing errors."""

    # General errors
    INTERNAL_ERROR = "INTERNAL_ERROR"
    VALIDATION_ERROR = "VALIDATION_ERROR"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"

    # Linear algebra / channel errors
    INVALID_STATE = "INVALID_STATE"
    CHANNEL_ERROR = "CHANNEL_ERROR"

    # Protocol errors
    INSUFFICIENT_DATA = "INSUFFICIENT_DATA"
    TRANSCRIPT_FORMAT = "TRANSCRIPT_FORMAT"

    # Security bound errors
    INFEASIBLE = "INFEASIBLE"

    # Photonic verification
    VERIFICATION_FAILED = "VERIFICATION_FAILED"

    # CLI configuration
    CONFIG_ERROR = "CONFIG_ERROR"


# CLI exit code mapping: 0 success, 1 verification failure, 2 config error, 3 insufficient data
ERROR_CODE_TO_EXIT: Dict[ErrorCode, int] = {
    ErrorCode.INTERNAL_ERROR: 1,
    ErrorCode.VALIDATION_ERROR: 2,
    ErrorCode.DIMENSION_MISMATCH: 2,
    ErrorCode.INVALID_STATE: 2,
    ErrorCode.CHANNEL_ERROR: 2,
    ErrorCode.INSUFFICIENT_DATA: 3,
    ErrorCode.TRANSCRIPT_FORMAT: 2,
    ErrorCode.INFEASIBLE: 1,
    ErrorCode.VERIFICATION_FAILED: 1,
    ErrorCode.CONFIG_ERROR: 2,
}


@dataclass
class ErrorContext:
    """Additional context for debugging errors."""

    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    command: Optional[str] = None
    seed: Optional[int] = None
    additional: Dict[str, Any] = field(default_factory=dict)


class RfiQkdError(Exception):
    """
    Base exception for all rfi_qkd errors.

    All custom exceptions inherit from this class so the CLI can report
    them uniformly and pick the exit code from the error code.
    """

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.INTERNAL_ERROR,
        context: Optional[ErrorContext] = None,
        cause: Optional[Exception] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.context = context or ErrorContext()
        self.cause = cause

    @property
    def exit_code(self) -> int:
        """Get CLI exit code for this error."""
        return ERROR_CODE_TO_EXIT.get(self.code, 1)

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to a dictionary for structured reporting."""
        result: Dict[str, Any] = {
            "error": {
                "code": self.code.value,
                "message": self.message,
                "timestamp": self.context.timestamp.isoformat(),
            }
        }

        if self.context.command:
            result["error"]["command"] = self.context.command
        if self.context.seed is not None:
            result["error"]["seed"] = self.context.seed
        if self.context.additional:
            result["error"]["details"] = dict(self.context.additional)

        return result

    def __str__(self) -> str:
        return f"[{self.code.value}] {self.message}"


# Validation Exceptions


class ValidationError(RfiQkdError):
    """A precondition of an operation was violated."""

    def __init__(self, message: str, field: Optional[str] = None, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        if field:
            context.additional["field"] = field
        kwargs.setdefault("code", ErrorCode.VALIDATION_ERROR)
        super().__init__(message, context=context, **kwargs)


class DimensionMismatchError(ValidationError):
    """Operands have incompatible dimensions."""

    def __init__(self, expected: Any, actual: Any, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        context.additional["expected"] = expected
        context.additional["actual"] = actual
        RfiQkdError.__init__(
            self,
            f"Dimension mismatch: expected {expected}, got {actual}",
            code=ErrorCode.DIMENSION_MISMATCH,
            context=context,
            **kwargs,
        )


class InvalidStateError(ValidationError):
    """Matrix does not satisfy the invariants of the requested type."""

    def __init__(self, message: str, **kwargs: Any):
        kwargs["code"] = ErrorCode.INVALID_STATE
        super().__init__(message, **kwargs)


class ChannelError(ValidationError):
    """Kraus operators do not form a trace-preserving channel."""

    def __init__(self, message: str, residual: Optional[float] = None, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        if residual is not None:
            context.additional["residual"] = residual
        kwargs["code"] = ErrorCode.CHANNEL_ERROR
        super().__init__(message, context=context, **kwargs)


# Protocol Exceptions


class InsufficientDataError(RfiQkdError):
    """A basis pair needed by an estimator has no counts."""

    def __init__(self, basis_pair: Tuple[str, str], **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        context.additional["basis_pair"] = list(basis_pair)
        self.basis_pair = basis_pair
        super().__init__(
            f"Insufficient data: no counts for basis pair ({basis_pair[0]},{basis_pair[1]})",
            code=ErrorCode.INSUFFICIENT_DATA,
            context=context,
            **kwargs,
        )


class TranscriptFormatError(RfiQkdError):
    """Transcript text could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        if line_number is not None:
            context.additional["line"] = line_number
        super().__init__(message, code=ErrorCode.TRANSCRIPT_FORMAT, context=context, **kwargs)


# Security Exceptions


class InfeasibleError(RfiQkdError):
    """(Q, C) lies outside the region reachable by any two-qubit state."""

    def __init__(self, q: float, c: float, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        context.additional["Q"] = q
        context.additional["C"] = c
        super().__init__(
            f"Infeasible parameters: C={c:.6g} exceeds 2[(1-Q)^2+Q^2] at Q={q:.6g}",
            code=ErrorCode.INFEASIBLE,
            context=context,
            **kwargs,
        )


# Photonic Exceptions


class VerificationError(RfiQkdError):
    """A photonic circuit check exceeded its tolerance."""

    def __init__(self, check: str, residual: float, tolerance: float, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        context.additional["check"] = check
        context.additional["residual"] = residual
        context.additional["tolerance"] = tolerance
        super().__init__(
            f"Verification '{check}' failed: residual {residual:.3e} > {tolerance:.1e}",
            code=ErrorCode.VERIFICATION_FAILED,
            context=context,
            **kwargs,
        )


# CLI Exceptions


class ConfigError(RfiQkdError):
    """Run configuration was rejected before any computation."""

    def __init__(self, message: str, field: Optional[str] = None, **kwargs: Any):
        context = kwargs.pop("context", None) or ErrorContext()
        if field:
            context.additional["field"] = field
        super().__init__(message, code=ErrorCode.CONFIG_ERROR, context=context, **kwargs)
