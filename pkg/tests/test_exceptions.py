"""Tests for the exception hierarchy and its CLI exit codes."""

import pytest

from src.exceptions import (
    ERROR_CODE_TO_EXIT,
    ChannelError,
    ConfigError,
    DimensionMismatchError,
    ErrorCode,
    ErrorContext,
    InfeasibleError,
    InsufficientDataError,
    InvalidStateError,
    RfiQkdError,
    TranscriptFormatError,
    ValidationError,
    VerificationError,
)


class TestExitCodes:
    """Test the error code to exit status mapping."""

    @pytest.mark.parametrize(
        "error, code",
        [
            (ValidationError("bad"), 2),
            (DimensionMismatchError(4, 9), 2),
            (InvalidStateError("not PSD"), 2),
            (ChannelError("not trace preserving"), 2),
            (ConfigError("bad drift", field="drift"), 2),
            (TranscriptFormatError("short line", line_number=3), 2),
            (InsufficientDataError(("X", "Y")), 3),
            (VerificationError("hadamard_modulus", 0.1, 1e-12), 1),
            (InfeasibleError(0.1, 2.0), 1),
            (RfiQkdError("boom"), 1),
        ],
    )
    def test_exit_code(self, error, code):
        """Test each error maps to its documented exit status."""
        assert error.exit_code == code

    def test_all_codes_mapped(self):
        """Test every error code has an exit status."""
        assert set(ERROR_CODE_TO_EXIT) == set(ErrorCode)


class TestErrorContext:
    """Test structured error details."""

    def test_validation_field(self):
        """Test the offending field is kept in the context."""
        error = ValidationError("Q out of range", field="Q")

        assert error.code == ErrorCode.VALIDATION_ERROR
        assert error.context.additional["field"] == "Q"
        assert str(error) == "[VALIDATION_ERROR] Q out of range"

    def test_subclasses_are_validation_errors(self):
        """Test precondition errors can be caught as ValidationError."""
        for error in (DimensionMismatchError(2, 3), InvalidStateError("x"), ChannelError("y")):
            assert isinstance(error, ValidationError)

    def test_to_dict(self):
        """Test the reporting dictionary carries command, seed and details."""
        context = ErrorContext(command="simulate", seed=42)
        error = InsufficientDataError(("Z", "Z"), context=context)
        data = error.to_dict()["error"]

        assert data["code"] == "INSUFFICIENT_DATA"
        assert data["command"] == "simulate"
        assert data["seed"] == 42
        assert data["details"] == {"basis_pair": ["Z", "Z"]}
        assert "timestamp" in data

    def test_verification_message(self):
        """Test the verification message names check, residual and tolerance."""
        error = VerificationError("unitarity_DC3", 0.25, 1e-12)

        assert "unitarity_DC3" in error.message
        assert "2.500e-01" in error.message
        assert error.context.additional["tolerance"] == 1e-12

    def test_cause_kept(self):
        """Test the wrapped exception is available."""
        cause = ValueError("inner")
        error = ConfigError("outer", cause=cause)

        assert error.cause is cause
