"""Storage module for CSV result tables."""

from .result_writer import SCHEMA_VERSION, ResultTable, format_value, read_result_csv

__all__ = ["SCHEMA_VERSION", "ResultTable", "format_value", "read_result_csv"]
