# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
State files.

A state file is a JSON document:

    {
        "dims": [2, 2, 2],
        "amplitudes": [
            {"index": [1, 1, 1], "re": 0.70710678118654757, "im": 0},
            {"index": [2, 2, 2], "re": 0.70710678118654757, "im": 0}
        ],
        "normalized": true
    }

Indices are 1-based. Missing amplitudes are zero, `im` may be omitted, and
`normalized` defaults to true. Unknown fields are rejected, and so are the NaN and
Infinity literals that JSON parsers commonly accept. Numbers are written
with 17 significant digits so that a written state reads back bit for bit.
"""

import json
import logging
import math
import sys
from typing import Any, Dict, List

from .errors import DuplicateEntry, IndexOutOfRange, NotNormalized, StateFileError, ZeroState
from .state import PureState, new_state

logger = logging.getLogger("concurrence")

FIELDS = {"dims", "amplitudes", "normalized"}
RECORD_FIELDS = {"index", "re", "im"}


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_record(position: int, record: Any, m: int):
    field = f"amplitudes[{position}]"
    if not isinstance(record, dict):
        raise StateFileError(field, "must be an object with index, re and im")
    unknown = set(record) - RECORD_FIELDS
    if unknown:
        raise StateFileError(f"{field}.{sorted(unknown)[0]}", "unknown field")
    if "index" not in record or "re" not in record:
        raise StateFileError(field, "needs 'index' and 're'")

    index = record["index"]
    if not isinstance(index, list) or not all(_is_int(k) for k in index):
        raise StateFileError(f"{field}.index", "must be a list of integers")
    if len(index) != m:
        raise StateFileError(
            f"{field}.index", f"has {len(index)} entries, expected {m} (one per subsystem)"
        )
    for name in ("re", "im"):
        if name in record and not _is_number(record[name]):
            raise StateFileError(f"{field}.{name}", "must be a number")
        if name in record and not math.isfinite(record[name]):
            raise StateFileError(f"{field}.{name}", f"must be finite, got {record[name]!r}")
    return index, complex(record["re"], record.get("im", 0.0))


def parse_state(text: str) -> PureState:
    """
    Parse a state document.

    Raises:
        StateFileError: naming the offending field
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFileError(None, f"Not a valid JSON document: {e}")
    if not isinstance(document, dict):
        raise StateFileError(None, "Top level must be an object")

    unknown = set(document) - FIELDS
    if unknown:
        raise StateFileError(sorted(unknown)[0], "unknown field")

    dims = document.get("dims")
    if (
        not isinstance(dims, list)
        or not dims
        or not all(_is_int(n) and n >= 1 for n in dims)
    ):
        raise StateFileError("dims", "must be a non-empty list of positive integers")

    records = document.get("amplitudes")
    if not isinstance(records, list):
        raise StateFileError("amplitudes", "must be a list of records")

    normalized = document.get("normalized", True)
    if not isinstance(normalized, bool):
        raise StateFileError("normalized", "must be true or false")

    entries = [_parse_record(i, record, len(dims)) for i, record in enumerate(records)]
    try:
        state = new_state(dims, entries, unnormalized=not normalized)
    except IndexOutOfRange as e:
        position = next(i for i, (index, _) in enumerate(entries) if tuple(index) == e.index)
        raise StateFileError(f"amplitudes[{position}].index", str(e))
    except (DuplicateEntry, ZeroState) as e:
        raise StateFileError("amplitudes", str(e))
    except NotNormalized as e:
        raise StateFileError(
            "amplitudes", f"state has norm {e.norm!r}; set \"normalized\": false to accept it"
        )

    if not normalized:
        logger.warning(f"Accepting unnormalized state with norm {state.norm()}")
    return state


def read_state(input_file: str) -> PureState:
    """
    Read a state file, "-" meaning standard input.

    Raises:
        StateFileError: if the file cannot be read or parsed
    """
    if input_file == "-":
        return parse_state(sys.stdin.read())
    try:
        with open(input_file) as f:
            text = f.read()
    except OSError as e:
        raise StateFileError(None, f"Cannot read {input_file}: {e}")
    return parse_state(text)


def _number(value: float) -> str:
    return format(float(value), ".17g")


def format_state(state: PureState, tolerance: float = 0.0) -> str:
    """
    Serialize a state, one amplitude record per line, skipping amplitudes with
    modulus <= tolerance.
    """
    records: List[str] = [
        f'{{"index": {json.dumps(list(index))}, "re": {_number(value.real)}, "im": {_number(value.imag)}}}'
        for index, value in state.entries(tolerance)
    ]
    lines = [
        "{",
        f'    "dims": {json.dumps(list(state.dims))},',
        '    "amplitudes": [',
        ",\n".join(f"        {record}" for record in records),
        "    ],",
        f'    "normalized": {json.dumps(abs(state.norm() - 1.0) <= PureState.NORM_TOLERANCE)}',
        "}",
    ]
    return "\n".join(line for line in lines if line) + "\n"


def write_state(state: PureState, output_file: str):
    if output_file == "-":
        sys.stdout.write(format_state(state))
        return
    with open(output_file, "w") as f:
        f.write(format_state(state))


def state_document(state: PureState) -> Dict:
    """The state file content as a dictionary."""
    return json.loads(format_state(state))
