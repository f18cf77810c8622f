#!/usr/bin/env python3
#
# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
End-to-end properties over many random states. The large sample runs are marked
slow; skip them with `-m "not slow"`.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from concurrence_tools.concurrence import (  # noqa: E402
    NormalizationConvention,
    applicable_classes,
    concurrence,
    concurrence_bipartite,
    concurrence_ghz,
    concurrence_ghz_reduced,
    concurrence_w,
)
from concurrence_tools.invariance import (  # noqa: E402
    check_ghz_noninvariance,
    check_oracle_equivalence,
    check_permutation_invariance,
    check_square_identity,
    check_w_slocc_invariance,
    random_local_unitaries,
)
from concurrence_tools.operators import ClassTag  # noqa: E402
from concurrence_tools.optimizer import OptimizerConfig, maximize_class  # noqa: E402
from concurrence_tools.oracle import i_concurrence, wootters  # noqa: E402
from concurrence_tools.state import (  # noqa: E402
    StateLabel,
    apply_local,
    basis_state,
    bipartition,
    named_state,
    random_state,
)

UNIT = NormalizationConvention.unit()

ORACLE_SHAPES = [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 3, 2), (2, 2, 2, 2)]


def _random_product(dims, rng):
    factors = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for n in dims]
    return named_state(StateLabel.product(factors))


class TestCanonicalValues:
    def test_four_partite(self):
        assert concurrence_w(named_state(StateLabel.w(4)), UNIT).value == pytest.approx(
            np.sqrt(3 / 2), abs=1e-10
        )
        assert concurrence_ghz(named_state(StateLabel.ghz(4)), UNIT).value == pytest.approx(
            np.sqrt(6), abs=1e-10
        )
        assert concurrence_ghz_reduced(named_state(StateLabel.w(4))).value == pytest.approx(
            0.0, abs=1e-12
        )

    def test_ghz4_summary(self):
        state = named_state(StateLabel.ghz(4))
        values = {tag: concurrence(state, tag).value for tag in applicable_classes(4)}
        assert values[ClassTag.W] == pytest.approx(0.0, abs=1e-12)
        assert values[ClassTag.GHZ_FULL] == pytest.approx(1.0, abs=1e-12)
        assert values[ClassTag.GHZ_REDUCED] == pytest.approx(0.0, abs=1e-12)

    def test_scaling_in_normalization(self):
        state = random_state([2, 2, 3], 21)
        base = concurrence_ghz(state, UNIT).value
        assert concurrence_ghz(state, NormalizationConvention(ghz=9)).value == pytest.approx(3 * base)


class TestBipartiteIdentities:
    @pytest.mark.slow
    def test_wootters(self):
        for seed in range(500):
            state = random_state([2, 2], seed)
            assert concurrence_bipartite(state).value == pytest.approx(wootters(state), abs=1e-12)

    @pytest.mark.slow
    def test_i_concurrence(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            dims = tuple(int(n) for n in rng.integers(2, 5, size=2))
            state = random_state(dims, rng)
            assert concurrence_bipartite(state).value == pytest.approx(
                i_concurrence(state), abs=1e-10
            )

    def test_local_unitary_invariance(self):
        for seed in range(20):
            state = random_state([3, 4], seed)
            rotated = apply_local(state, random_local_unitaries(state.dims, seed + 100))
            assert concurrence_bipartite(rotated).value == pytest.approx(
                concurrence_bipartite(state).value, abs=1e-10
            )

    def test_random_state_entangled_across_every_cut(self):
        for seed in range(100):
            state = random_state([2, 3, 2], seed)
            for size in (1, 2):
                for cut in combinations(range(1, 4), size):
                    assert concurrence_bipartite(bipartition(state, cut)).value > 1e-6


class TestProductStates:
    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (2, 2, 2), (2, 3, 2), (2, 2, 2, 2)])
    def test_all_classes_vanish(self, dims):
        rng = np.random.default_rng(len(dims))
        for _ in range(100):
            state = _random_product(dims, rng)
            for tag in applicable_classes(len(dims)):
                assert concurrence(state, tag).value < 1e-10


class TestOracleEquivalence:
    @pytest.mark.slow
    @pytest.mark.parametrize("dims", ORACLE_SHAPES, ids=lambda d: "x".join(map(str, d)))
    def test_all_classes(self, dims):
        for tag in applicable_classes(len(dims)):
            result = check_oracle_equivalence(tag, dims, samples=200, seed=1)
            assert result.passed, result


class TestOperatorClaims:
    @pytest.mark.slow
    @pytest.mark.parametrize("m", [3, 4])
    def test_slocc(self, m):
        assert check_w_slocc_invariance(m, samples=100, seed=m).passed
        assert check_ghz_noninvariance(m, samples=100, seed=m).passed

    @pytest.mark.parametrize("m", [3, 4])
    def test_square_identity(self, m):
        assert check_square_identity(m).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_permutation(self, m):
        for tag in (ClassTag.W, ClassTag.GHZ_FULL):
            assert check_permutation_invariance(tag, m, samples=20, seed=m).passed


class TestOptimizerRecovery:
    @pytest.mark.slow
    def test_rotated_ghz(self):
        ghz = named_state(StateLabel.ghz(3))
        recovered = 0
        for trial in range(20):
            rotated = apply_local(ghz, random_local_unitaries([2, 2, 2], seed=trial))
            result = maximize_class(rotated, ClassTag.GHZ_FULL, config=OptimizerConfig(seed=trial))
            recovered += result.value >= 0.999
        assert recovered >= 19

    def test_canonical_ghz_stays_optimal(self):
        result = maximize_class(
            named_state(StateLabel.ghz(3)),
            ClassTag.GHZ_FULL,
            config=OptimizerConfig(restarts=2, max_iterations=50, seed=0),
        )
        assert result.value == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.slow
    def test_product_states(self):
        for trial in range(20):
            state = apply_local(
                basis_state([2, 2, 2], (2, 2, 2)), random_local_unitaries([2, 2, 2], seed=trial)
            )
            result = maximize_class(state, ClassTag.GHZ_FULL, config=OptimizerConfig(seed=trial))
            assert result.value < 1e-6
