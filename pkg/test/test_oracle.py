#!/usr/bin/env python3
#
# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from concurrence_tools.concurrence import concurrence  # noqa: E402
from concurrence_tools.errors import ShapeMismatch, TooLarge, WrongShape  # noqa: E402
from concurrence_tools.operators import ClassTag  # noqa: E402
from concurrence_tools.oracle import (  # noqa: E402
    concurrence_via_operators,
    expectation,
    i_concurrence,
    reduced_density,
    wootters,
)
from concurrence_tools.state import (  # noqa: E402
    PureState,
    StateLabel,
    basis_state,
    named_state,
    new_state,
    random_state,
)


class TestDense:
    SCENARIOS = {
        "test_named_values": [
            ("bell", {"label": StateLabel.bell(), "tag": ClassTag.EPR, "expected": 1.0}),
            ("w3", {"label": StateLabel.w(3), "tag": ClassTag.W, "expected": 1.0}),
            ("ghz3", {"label": StateLabel.ghz(3), "tag": ClassTag.GHZ_FULL, "expected": 1.0}),
            ("ghz4", {"label": StateLabel.ghz(4), "tag": ClassTag.GHZ_FULL, "expected": 1.0}),
            ("w4_ghz", {"label": StateLabel.w(4), "tag": ClassTag.GHZ_FULL, "expected": 0.0}),
            (
                "ghz_qutrits",
                {"label": StateLabel.ghz(2, 3), "tag": ClassTag.EPR, "expected": 2 / np.sqrt(3)},
            ),
        ],
        "test_agrees_with_factorized_route": [
            ("w_2x3x2", {"dims": (2, 3, 2), "tag": ClassTag.W}),
            ("ghz_2x2x2x2", {"dims": (2, 2, 2, 2), "tag": ClassTag.GHZ_FULL}),
            ("reduced_2x2x2x2", {"dims": (2, 2, 2, 2), "tag": ClassTag.GHZ_REDUCED}),
            ("ghz_2x2x2x2x2", {"dims": (2, 2, 2, 2, 2), "tag": ClassTag.GHZ_FULL}),
        ],
    }

    def test_named_values(self, label, tag, expected):
        report = concurrence_via_operators(named_state(label), tag)
        assert report.value == pytest.approx(expected, abs=1e-12)
        assert report.method == "dense"

    def test_agrees_with_factorized_route(self, dims, tag):
        for seed in range(5):
            state = random_state(dims, seed)
            dense = concurrence_via_operators(state, tag)
            factorized = concurrence(state, tag, method="operators")
            assert dense.value == pytest.approx(factorized.value, abs=1e-12)
            assert dense.positions.keys() == factorized.positions.keys()

    def test_expectation_shape(self):
        with pytest.raises(ShapeMismatch):
            expectation(named_state(StateLabel.bell()), np.eye(3))

    def test_expectation_is_antilinear(self):
        state = new_state([2], [((1,), 0.6j), ((2,), 0.8)])
        assert expectation(state, np.eye(2)) == pytest.approx((-0.6j) ** 2 + 0.8**2)

    def test_expectation_phase(self):
        state = random_state([2, 3], 2)
        matrix = np.random.default_rng(3).standard_normal((6, 6))
        c = np.exp(0.7j)
        scaled = PureState(c * state.amplitudes)
        assert expectation(scaled, matrix) == pytest.approx(
            np.conj(c) ** 2 * expectation(state, matrix)
        )

    def test_too_large(self):
        with pytest.raises(TooLarge):
            concurrence_via_operators(named_state(StateLabel.w(3)), ClassTag.W, dense_limit=4)


class TestBipartiteReferences:
    def test_wootters(self):
        assert wootters(named_state(StateLabel.bell())) == pytest.approx(1.0)
        assert wootters(basis_state([2, 2], (1, 2))) == 0.0

    def test_wootters_shape(self):
        with pytest.raises(WrongShape):
            wootters(random_state([2, 3], 0))

    def test_i_concurrence(self):
        state = new_state(
            [2, 3],
            [((1, 1), 1 / np.sqrt(3)), ((2, 2), 1 / np.sqrt(3)), ((2, 3), 1 / np.sqrt(3))],
        )
        assert i_concurrence(state) == pytest.approx(2 * np.sqrt(2) / 3)
        assert i_concurrence(state, subsystem=2) == pytest.approx(2 * np.sqrt(2) / 3)

    def test_i_concurrence_needs_two_parties(self):
        with pytest.raises(WrongShape):
            i_concurrence(named_state(StateLabel.w(3)))


class TestReducedDensity:
    def test_ghz_marginal(self):
        rho = reduced_density(named_state(StateLabel.ghz(3)), [1])
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)
        assert rho.purity() == pytest.approx(0.5)

    def test_properties(self):
        rho = reduced_density(random_state([2, 3, 2], 8), [3, 1])
        assert rho.subsystems == (1, 3)
        assert rho.matrix.shape == (4, 4)
        assert rho.trace() == pytest.approx(1.0)
        assert rho.hermiticity_residual() < 1e-14
        assert 0.25 - 1e-12 <= rho.purity() <= 1.0 + 1e-12

    def test_pure_marginal(self):
        rho = reduced_density(basis_state([2, 2], (2, 1)), [2])
        assert rho.purity() == pytest.approx(1.0)

    def test_bad_keep(self):
        with pytest.raises(ShapeMismatch):
            reduced_density(random_state([2, 2], 0), [3])
