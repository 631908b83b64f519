"""Line-oriented text form of a Transcript.

    #dims 2 2
    #n 1000
    #seed 7
    #drift constant:0.0
    #alice_bases X Y Z
    #bob_bases X Y Z
    X X 0 0 168

Only nonzero counts are written. The basis headers are optional on input.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import RfiQkdError, TranscriptFormatError
from .records import QUBIT_BASES, QUTRIT_BASES, Transcript

_REQUIRED_HEADERS = ("dims", "n", "seed", "drift")


def dump_transcript(t: Transcript) -> str:
    lines = [
        f"#dims {t.dims[0]} {t.dims[1]}",
        f"#n {t.n_signals}",
        f"#seed {t.seed}",
        f"#drift {t.drift}",
        f"#alice_bases {' '.join(t.alice_bases)}",
        f"#bob_bases {' '.join(t.bob_bases)}",
    ]
    lines.extend(f"{a} {b} {x} {y} {n}" for a, b, x, y, n in t.nonzero())
    return "\n".join(lines) + "\n"


def _default_bases(dims: Tuple[int, int]) -> Tuple[str, ...]:
    return QUTRIT_BASES if dims == (3, 3) else QUBIT_BASES


def parse_transcript(text: str) -> Transcript:
    """Parse the text produced by :func:`dump_transcript`.

    Raises:
        TranscriptFormatError: missing header, malformed line or inconsistent totals
    """
    headers: Dict[str, str] = {}
    rows: List[Tuple[int, str, str, int, int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(" ")
            headers[key.strip()] = value.strip()
            continue
        fields = line.split()
        if len(fields) != 5:
            raise TranscriptFormatError(f"Expected 5 fields, got {len(fields)}", line_number=number)
        try:
            a, b, count = int(fields[2]), int(fields[3]), int(fields[4])
        except ValueError as e:
            raise TranscriptFormatError(
                f"Non-integer outcome or count in '{line}'", line_number=number, cause=e
            ) from e
        rows.append((number, fields[0], fields[1], a, b, count))

    for key in _REQUIRED_HEADERS:
        if key not in headers:
            raise TranscriptFormatError(f"Missing header #{key}")
    try:
        d_a, d_b = (int(v) for v in headers["dims"].split())
        n_signals = int(headers["n"])
        seed = int(headers["seed"])
    except ValueError as e:
        raise TranscriptFormatError("Malformed #dims, #n or #seed header", cause=e) from e
    dims = (d_a, d_b)

    alice = _bases_header(headers.get("alice_bases")) or _default_bases(dims)
    bob = _bases_header(headers.get("bob_bases")) or _default_bases(dims)
    counts = np.zeros((len(alice), len(bob), d_a, d_b), dtype=np.int64)
    for number, basis_a, basis_b, x, y, count in rows:
        if basis_a not in alice or basis_b not in bob:
            raise TranscriptFormatError(
                f"Unknown basis pair ({basis_a},{basis_b})", line_number=number
            )
        if not (0 <= x < d_a and 0 <= y < d_b) or count < 0:
            raise TranscriptFormatError("Outcome or count out of range", line_number=number)
        counts[alice.index(basis_a), bob.index(basis_b), x, y] += count

    try:
        return Transcript(
            dims=dims,
            alice_bases=alice,
            bob_bases=bob,
            counts=counts,
            seed=seed,
            drift=headers["drift"],
            n_signals=n_signals,
        )
    except RfiQkdError as e:
        raise TranscriptFormatError(e.message, cause=e) from e


def _bases_header(value: Optional[str]) -> Optional[Tuple[str, ...]]:
    if not value:
        return None
    return tuple(value.split())
