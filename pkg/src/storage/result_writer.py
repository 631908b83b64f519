"""CSV output with a ``#key=value`` provenance header.

Every table starts with ``#schema=1``; further header lines carry the run
parameters (seed, drift spec, ...) so that a CSV file documents how it was
produced. Values are formatted with ``repr`` for floats, which keeps the output
byte-identical for identical runs.
"""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from ..observability import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = 1


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class ResultTable:
    """Rows sharing one column list, plus header metadata."""

    columns: Sequence[str]
    rows: List[Mapping[str, Any]] = field(default_factory=list)
    header: Dict[str, Any] = field(default_factory=dict)

    def append(self, row: Mapping[str, Any]) -> None:
        unknown = set(row) - set(self.columns)
        if unknown:
            raise ValidationError(f"Row has columns outside the table: {sorted(unknown)}")
        self.rows.append(row)

    def render(self) -> str:
        buffer = io.StringIO()
        buffer.write(f"#schema={SCHEMA_VERSION}\n")
        for key, value in self.header.items():
            buffer.write(f"#{key}={format_value(value)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row.get(c)) for c in self.columns])
        return buffer.getvalue()

    def write(self, out: Optional[str] = None) -> str:
        """Write to ``out`` (a file path) and return the text; stdout is the caller's job."""
        text = self.render()
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {len(self.rows)} rows to {path}")
        return text


def read_result_csv(text: str) -> Tuple[Dict[str, str], List[Dict[str, str]]]:
    """Parse text produced by ``ResultTable.render`` into (header, rows)."""
    header: Dict[str, str] = {}
    body: List[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            header[key] = value
        elif line:
            body.append(line)
    if header.get("schema") != str(SCHEMA_VERSION):
        raise ValidationError(f"Unsupported CSV schema: {header.get('schema')!r}")
    rows = list(csv.DictReader(body))
    return header, rows
