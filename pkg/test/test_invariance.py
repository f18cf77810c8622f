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

import concurrence_tools.invariance as invariance  # noqa: E402
from concurrence_tools.errors import SingularDraw, WrongShape  # noqa: E402
from concurrence_tools.invariance import (  # noqa: E402
    Expectation,
    InvarianceResult,
    check_ghz_noninvariance,
    check_oracle_equivalence,
    check_permutation_invariance,
    check_square_identity,
    check_w_local_unitary_variation,
    check_w_slocc_control,
    check_w_slocc_invariance,
    random_gl2,
    random_local_unitaries,
    random_sl2,
)
from concurrence_tools.operators import ClassTag  # noqa: E402

BIT_FLIP = np.array([[0, 1], [1, 0]], dtype=complex)


class TestDraws:
    def test_sl2_determinant(self):
        for seed in range(10):
            assert np.linalg.det(random_sl2(seed)) == pytest.approx(1.0)

    def test_gl2_deterministic(self):
        np.testing.assert_array_equal(random_gl2(3), random_gl2(3))
        assert abs(np.linalg.det(random_gl2(3))) > 0

    def test_singular_draw(self, monkeypatch):
        monkeypatch.setattr(invariance, "_complex_normal", lambda rng, shape: np.zeros(shape))
        with pytest.raises(SingularDraw) as e:
            random_gl2(0)
        assert e.value.attempts == invariance.MAX_DRAW_ATTEMPTS

    def test_local_unitaries(self):
        unitaries = random_local_unitaries([2, 3, 1], seed=4)
        assert [u.shape for u in unitaries] == [(2, 2), (3, 3), (1, 1)]
        for u in unitaries:
            np.testing.assert_allclose(u @ u.conj().T, np.eye(len(u)), atol=1e-12)


class TestResult:
    SCENARIOS = {
        "test_passed": [
            ("invariant_small", {"expectation": Expectation.INVARIANT, "residual": 1e-12, "passed": True}),
            ("invariant_large", {"expectation": Expectation.INVARIANT, "residual": 0.5, "passed": False}),
            ("noninvariant_large", {"expectation": Expectation.NON_INVARIANT, "residual": 0.5, "passed": True}),
            ("noninvariant_small", {"expectation": Expectation.NON_INVARIANT, "residual": 0.0, "passed": False}),
            ("informational", {"expectation": Expectation.INFORMATIONAL, "residual": 0.5, "passed": True}),
        ],
    }

    def test_passed(self, expectation, residual, passed):
        result = InvarianceResult("claim", residual, 1, 1e-8, expectation)
        assert result.passed == passed
        assert result.to_dict()["passed"] == passed

    def test_to_dict(self):
        result = InvarianceResult("w-slocc-m3", 1e-15, 10, 1e-8)
        assert result.to_dict() == {
            "claim": "w-slocc-m3",
            "residual": 1e-15,
            "samples": 10,
            "threshold": 1e-8,
            "expectation": "invariant",
            "verdict": "holds",
            "passed": True,
        }


class TestSlocc:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_w_invariant_on_support(self, m):
        result = check_w_slocc_invariance(m, samples=20, seed=1)
        assert result.claim == f"w-slocc-m{m}"
        assert result.passed

    def test_w_full_product_is_informational(self):
        result = check_w_slocc_invariance(3, samples=5, seed=1, on_support=False)
        assert result.claim == "w-slocc-m3-full"
        assert result.expectation == Expectation.INFORMATIONAL
        assert not result.holds
        assert result.passed

    def test_control_moves_operators(self):
        result = check_w_slocc_control(3, samples=5, seed=2)
        assert result.expectation == Expectation.NON_INVARIANT
        assert result.passed

    def test_ghz_moves_operators(self):
        for m in (3, 4):
            assert check_ghz_noninvariance(m, samples=5, seed=3).passed

    def test_ghz_bit_flip_keeps_operators(self):
        result = check_ghz_noninvariance(3, samples=2, draw=lambda rng: BIT_FLIP)
        assert result.residual < 1e-14
        assert not result.passed

    def test_deterministic(self):
        a = check_w_slocc_control(3, samples=3, seed=9)
        b = check_w_slocc_control(3, samples=3, seed=9)
        assert a.residual == b.residual


class TestPermutation:
    SCENARIOS = {
        "test_invariant": [
            ("w_qubits3", {"tag": ClassTag.W, "dims": 3}),
            ("w_qubits4", {"tag": ClassTag.W, "dims": 4}),
            ("ghz_qubits3", {"tag": ClassTag.GHZ_FULL, "dims": 3}),
            ("ghz_qubits4", {"tag": ClassTag.GHZ_FULL, "dims": 4}),
            ("w_qutrits3", {"tag": ClassTag.W, "dims": (3, 3, 3)}),
            ("ghz_qutrits3", {"tag": ClassTag.GHZ_FULL, "dims": (3, 3, 3)}),
            ("reduced_qubits3", {"tag": ClassTag.GHZ_REDUCED, "dims": 3}),
        ],
    }

    def test_invariant(self, tag, dims):
        result = check_permutation_invariance(tag, dims, samples=5, seed=0)
        assert result.passed, result

    def test_unequal_dims(self):
        with pytest.raises(WrongShape):
            check_permutation_invariance(ClassTag.W, (2, 3, 2))


class TestOperatorIdentities:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_square_identity(self, m):
        result = check_square_identity(m)
        assert result.claim == f"ghz-square-m{m}"
        assert result.passed

    @pytest.mark.parametrize(
        "tag,dims",
        [
            (ClassTag.EPR, (3, 3)),
            (ClassTag.W, (2, 3, 2)),
            (ClassTag.GHZ_FULL, (2, 2, 2, 2)),
            (ClassTag.GHZ_REDUCED, (2, 2, 2, 2)),
            (ClassTag.GHZ_FULL, (2, 2, 2, 2, 2)),
        ],
    )
    def test_oracle_equivalence(self, tag, dims):
        result = check_oracle_equivalence(tag, dims, samples=5, seed=4)
        assert result.passed, result

    def test_w_lu_variation_is_informational(self):
        result = check_w_local_unitary_variation(3, samples=3, seed=5)
        assert result.claim == "w-lu-m3"
        assert result.passed
