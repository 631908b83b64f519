"""Tests for rfi_qkd."""
