#!/usr/bin/env python3
#
# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

import io
import json
import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from concurrence_tools.errors import StateFileError  # noqa: E402
from concurrence_tools.file import (  # noqa: E402
    format_state,
    parse_state,
    read_state,
    state_document,
    write_state,
)
from concurrence_tools.state import StateLabel, named_state, random_state  # noqa: E402

GHZ3_DOCUMENT = """
{
    "dims": [2, 2, 2],
    "amplitudes": [
        {"index": [1, 1, 1], "re": 0.70710678118654757, "im": 0},
        {"index": [2, 2, 2], "re": 0.70710678118654757}
    ]
}
"""


def _document(**fields):
    document = {"dims": [2, 2], "amplitudes": [{"index": [1, 1], "re": 1.0, "im": 0.0}]}
    document.update(fields)
    return json.dumps(document)


class TestParse:
    def test_ghz3(self):
        state = parse_state(GHZ3_DOCUMENT)
        assert state.isclose(named_state(StateLabel.ghz(3)))

    def test_imaginary_part(self):
        state = parse_state(
            _document(amplitudes=[{"index": [1, 2], "re": 0.6, "im": 0.8}])
        )
        assert state.amplitude((1, 2)) == pytest.approx(0.6 + 0.8j)

    def test_unnormalized_flag(self, caplog):
        state = parse_state(
            _document(amplitudes=[{"index": [1, 1], "re": 2}], normalized=False)
        )
        assert state.norm() == pytest.approx(2.0)
        assert "unnormalized" in caplog.text

    SCENARIOS = {
        "test_rejected": [
            ("not_json", {"text": "{", "field": None}),
            (
                "nan_literal",
                {
                    "text": _document(amplitudes=[{"index": [1, 1], "re": float("nan")}]),
                    "field": "amplitudes[0].re",
                },
            ),
            (
                "infinity_literal",
                {
                    "text": _document(
                        amplitudes=[{"index": [1, 1], "re": 1.0, "im": float("-inf")}],
                        normalized=False,
                    ),
                    "field": "amplitudes[0].im",
                },
            ),
            (
                "overflowing_number",
                {
                    "text": '{"dims": [2], "amplitudes": [{"index": [1], "re": 1e999}]}',
                    "field": "amplitudes[0].re",
                },
            ),
            ("not_object", {"text": "[]", "field": None}),
            ("unknown_field", {"text": _document(colour="red"), "field": "colour"}),
            ("no_dims", {"text": json.dumps({"amplitudes": []}), "field": "dims"}),
            ("bad_dims", {"text": _document(dims=[2, 0]), "field": "dims"}),
            ("bool_dims", {"text": _document(dims=[True, 2]), "field": "dims"}),
            ("no_amplitudes", {"text": json.dumps({"dims": [2]}), "field": "amplitudes"}),
            (
                "record_not_object",
                {"text": _document(amplitudes=[[1, 1]]), "field": "amplitudes[0]"},
            ),
            (
                "record_unknown",
                {
                    "text": _document(amplitudes=[{"index": [1, 1], "re": 1, "phase": 0}]),
                    "field": "amplitudes[0].phase",
                },
            ),
            (
                "record_missing_re",
                {"text": _document(amplitudes=[{"index": [1, 1]}]), "field": "amplitudes[0]"},
            ),
            (
                "index_length",
                {
                    "text": _document(amplitudes=[{"index": [1], "re": 1}]),
                    "field": "amplitudes[0].index",
                },
            ),
            (
                "zero_based",
                {
                    "text": _document(
                        amplitudes=[
                            {"index": [1, 1], "re": 0.6},
                            {"index": [0, 1], "re": 0.8},
                        ]
                    ),
                    "field": "amplitudes[1].index",
                },
            ),
            (
                "string_re",
                {
                    "text": _document(amplitudes=[{"index": [1, 1], "re": "1"}]),
                    "field": "amplitudes[0].re",
                },
            ),
            (
                "duplicate",
                {
                    "text": _document(
                        amplitudes=[
                            {"index": [1, 1], "re": 0.6},
                            {"index": [1, 1], "re": 0.8},
                        ]
                    ),
                    "field": "amplitudes",
                },
            ),
            ("zero_state", {"text": _document(amplitudes=[]), "field": "amplitudes"}),
            (
                "not_normalized",
                {
                    "text": _document(amplitudes=[{"index": [1, 1], "re": 2}]),
                    "field": "amplitudes",
                },
            ),
            ("normalized_not_bool", {"text": _document(normalized="no"), "field": "normalized"}),
        ],
    }

    def test_rejected(self, text, field):
        with pytest.raises(StateFileError) as e:
            parse_state(text)
        assert e.value.field == field
        if field is not None:
            assert field in str(e.value)


class TestFormat:
    def test_bit_exact(self):
        state = random_state([2, 3, 2], seed=12)
        assert parse_state(format_state(state)).isclose(state, atol=0)

    def test_sparse_output(self):
        document = state_document(named_state(StateLabel.w(3)))
        assert document["dims"] == [2, 2, 2]
        assert [r["index"] for r in document["amplitudes"]] == [[1, 1, 2], [1, 2, 1], [2, 1, 1]]
        assert document["normalized"] is True

    def test_tolerance(self):
        state = random_state([2, 2], seed=1)
        largest = max(abs(v) for _, v in state.entries())
        text = format_state(state, tolerance=largest - 1e-12)
        assert len(json.loads(text)["amplitudes"]) == 1

    def test_write_and_read(self, tmp_path):
        state = named_state(StateLabel.ghz(3, 3))
        path = str(tmp_path / "ghz.json")
        write_state(state, path)
        assert read_state(path).isclose(state, atol=0)

    def test_write_stdout(self, capsys):
        write_state(named_state(StateLabel.bell()), "-")
        assert json.loads(capsys.readouterr().out)["dims"] == [2, 2]

    def test_read_stdin(self, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(GHZ3_DOCUMENT))
        assert read_state("-").dims == (2, 2, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StateFileError):
            read_state(str(tmp_path / "missing.json"))

    def test_numbers_have_17_digits(self):
        text = format_state(named_state(StateLabel.bell()))
        assert "0.70710678118654746" in text or "0.70710678118654757" in text
