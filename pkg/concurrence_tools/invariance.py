# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Numerical checks of the invariance properties of the class operators.

SLOCC sandwiches `A O A^T` use the plain transpose, matching the antilinear
expectation `<psi| O C |psi>`. Each check returns an `InvarianceResult` with the
largest residual it saw; all checks are deterministic for a fixed seed.
"""

import logging
from functools import reduce
from itertools import permutations
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from .concurrence import ClassEvaluator, Method, NormalizationConvention, has_closed_form
from .errors import SingularDraw, WrongShape
from .operators import DEFAULT_DENSE_LIMIT, ClassTag, class_family, materialize
from .oracle import concurrence_via_operators
from .state import EnumArg, Seed, apply_local, permute, random_state

logger = logging.getLogger("concurrence")

Draw = Callable[[np.random.Generator], np.ndarray]


class Expectation(EnumArg):
    INVARIANT = "invariant"
    NON_INVARIANT = "non-invariant"
    INFORMATIONAL = "informational"


class InvarianceResult:
    """
    Outcome of one numerical claim.

    Attributes:
        claim (str): claim identifier, e.g. `w-slocc-m3`
        residual (float): largest deviation observed
        samples (int): number of random draws (1 for deterministic checks)
        threshold (float): decision threshold for the residual
        expectation (Expectation): whether the claim asserts a small residual, a
            large one, or nothing
    """

    def __init__(
        self,
        claim: str,
        residual: float,
        samples: int,
        threshold: float,
        expectation: Expectation = Expectation.INVARIANT,
    ):
        self.claim = claim
        self.residual = float(residual)
        self.samples = samples
        self.threshold = threshold
        self.expectation = expectation

    @property
    def holds(self) -> bool:
        """True iff the residual is below the threshold."""
        return self.residual < self.threshold

    @property
    def passed(self) -> bool:
        if self.expectation == Expectation.INVARIANT:
            return self.holds
        if self.expectation == Expectation.NON_INVARIANT:
            return self.residual > self.threshold
        return True

    def to_dict(self) -> Dict:
        return {
            "claim": self.claim,
            "residual": self.residual,
            "samples": self.samples,
            "threshold": self.threshold,
            "expectation": str(self.expectation),
            "verdict": "holds" if self.holds else "fails",
            "passed": self.passed,
        }

    def __repr__(self) -> str:
        return f"InvarianceResult<{self.claim}: {self.residual:.3g}, passed={self.passed}>"


MAX_DRAW_ATTEMPTS = 100
SINGULAR_TOLERANCE = 1e-12

SLOCC_THRESHOLD = 1e-8
NONINVARIANCE_THRESHOLD = 1e-3
PERMUTATION_THRESHOLD = 1e-9
SQUARE_THRESHOLD = 1e-12
ORACLE_THRESHOLD = 1e-10


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_gl2(seed: Seed = None) -> np.ndarray:
    """
    Invertible complex 2x2 matrix with complex-normal entries, determinant not fixed.
    """
    rng = np.random.default_rng(seed)
    for _ in range(MAX_DRAW_ATTEMPTS):
        a = _complex_normal(rng, (2, 2))
        if abs(np.linalg.det(a)) >= SINGULAR_TOLERANCE:
            return a
    raise SingularDraw(MAX_DRAW_ATTEMPTS)


def random_sl2(seed: Seed = None) -> np.ndarray:
    """
    Random element of SL(2, C): complex-normal entries rescaled by the square root
    of the determinant.

    Raises:
        SingularDraw: if no invertible matrix was drawn in MAX_DRAW_ATTEMPTS tries
    """
    a = random_gl2(seed)
    return a / np.sqrt(complex(np.linalg.det(a)))


def random_local_unitaries(dims: Sequence[int], seed: Seed = None) -> List[np.ndarray]:
    """Haar-random unitary per subsystem (identity on one-level subsystems)."""
    rng = np.random.default_rng(seed)
    return [
        unitary_group.rvs(n, random_state=rng) if n > 1 else np.eye(1, dtype=complex)
        for n in dims
    ]


def _sandwich_residual(op_matrix: np.ndarray, sandwich: np.ndarray) -> float:
    return float(np.max(np.abs(sandwich @ op_matrix @ sandwich.T - op_matrix)))


def _slocc_residual(
    tag: ClassTag,
    m: int,
    samples: int,
    seed: Seed,
    draw: Draw,
    on_support: bool,
    dense_limit: int,
) -> float:
    rng = np.random.default_rng(seed)
    family = class_family((2,) * m, tag)
    matrices = [materialize(op, dense_limit) for op in family]
    residual = 0.0
    for _ in range(samples):
        local = [np.asarray(draw(rng), dtype=np.complex128) for _ in range(m)]
        for op, op_matrix in zip(family, matrices):
            factors = [
                a if (not on_support or j + 1 in op.support) else np.eye(2)
                for j, a in enumerate(local)
            ]
            residual = max(residual, _sandwich_residual(op_matrix, reduce(np.kron, factors)))
    return residual


def check_w_slocc_invariance(
    m: int,
    samples: int = 100,
    seed: Seed = None,
    draw: Draw = random_sl2,
    on_support: bool = True,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> InvarianceResult:
    """
    Check A O A^T = O for every W-class qubit operator O and A a tensor product of
    local draws.

    A W operator has identity factors, and A A^T differs from the identity for a
    generic A, so by default the draws are applied on the operator's two
    half-pi factors only (`on_support=True`). With `on_support=False` the full
    product A_1 x ... x A_m is used.

    Args:
        m (int): number of qubits
        samples (int, optional): number of draws. Defaults to 100.
        seed (optional): seed for the draws
        draw (callable, optional): maps a numpy Generator to a 2x2 matrix.
            Defaults to `random_sl2`; `random_gl2` gives the control experiment.
        on_support (bool, optional): sandwich on the support only. Defaults to True.

    Raises:
        TooLarge: if 2^m exceeds `dense_limit`
    """
    residual = _slocc_residual(ClassTag.W, m, samples, seed, draw, on_support, dense_limit)
    if on_support:
        claim, expectation = f"w-slocc-m{m}", Expectation.INVARIANT
    else:
        claim, expectation = f"w-slocc-m{m}-full", Expectation.INFORMATIONAL
    logger.debug(f"{claim}: residual {residual}")
    return InvarianceResult(claim, residual, samples, SLOCC_THRESHOLD, expectation)


def check_w_slocc_control(
    m: int,
    samples: int = 100,
    seed: Seed = None,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> InvarianceResult:
    """
    Same sandwich as `check_w_slocc_invariance` with draws whose determinant is not
    fixed to 1; the W operators pick up a factor det(A_r1) det(A_r2) and move.
    """
    residual = _slocc_residual(ClassTag.W, m, samples, seed, random_gl2, True, dense_limit)
    return InvarianceResult(
        f"w-slocc-m{m}-control",
        residual,
        samples,
        SLOCC_THRESHOLD,
        Expectation.NON_INVARIANT,
    )


def check_ghz_noninvariance(
    m: int,
    samples: int = 100,
    seed: Seed = None,
    draw: Draw = random_sl2,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> InvarianceResult:
    """
    Largest residual of A O A^T - O over the GHZ-class qubit operators. Generic
    SL(2, C) draws are expected to move the operators; identity or bit-flip draws
    are not.
    """
    residual = _slocc_residual(ClassTag.GHZ_FULL, m, samples, seed, draw, False, dense_limit)
    logger.debug(f"ghz-slocc-m{m}: residual {residual}")
    return InvarianceResult(
        f"ghz-slocc-m{m}",
        residual,
        samples,
        NONINVARIANCE_THRESHOLD,
        Expectation.NON_INVARIANT,
    )


def check_permutation_invariance(
    tag: ClassTag,
    dims: Union[int, Sequence[int]],
    samples: int = 20,
    seed: Seed = None,
    norm: Optional[NormalizationConvention] = None,
) -> InvarianceResult:
    """
    Largest change of a class value under all permutations of the subsystems,
    over random states.

    Args:
        tag (ClassTag): class to check
        dims: number of qubits, or the local dimensions (which must be equal)

    Raises:
        WrongShape: if the local dimensions differ
    """
    dims = (2,) * dims if isinstance(dims, int) else tuple(dims)
    if len(set(dims)) != 1:
        raise WrongShape(dims, "equal local dimensions")
    m = len(dims)
    rng = np.random.default_rng(seed)
    evaluator = ClassEvaluator(dims, tag, norm)
    orders = list(permutations(range(1, m + 1)))

    residual = 0.0
    for _ in range(samples):
        state = random_state(dims, rng)
        reference = evaluator.value(state.amplitudes)
        for order in orders:
            value = evaluator.value(permute(state, order).amplitudes)
            residual = max(residual, abs(value - reference))
    claim = f"{tag}-permutation-m{m}"
    logger.debug(f"{claim}: residual {residual}")
    return InvarianceResult(claim, residual, samples, PERMUTATION_THRESHOLD)


def check_square_identity(
    m: int, dense_limit: int = DEFAULT_DENSE_LIMIT
) -> InvarianceResult:
    """
    Largest entry of O^2 - I over the GHZ-class qubit operators.
    """
    identity = np.eye(2**m)
    residual = 0.0
    for op in class_family((2,) * m, ClassTag.GHZ_FULL):
        op_matrix = materialize(op, dense_limit)
        residual = max(residual, float(np.max(np.abs(op_matrix @ op_matrix - identity))))
    return InvarianceResult(f"ghz-square-m{m}", residual, 1, SQUARE_THRESHOLD)


def check_oracle_equivalence(
    tag: ClassTag,
    dims: Sequence[int],
    samples: int = 200,
    seed: Seed = None,
    norm: Optional[NormalizationConvention] = None,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> InvarianceResult:
    """
    Largest difference between the dense operator route and the other routes
    (closed form where one exists, factorized operators always) over random states.
    """
    dims = tuple(dims)
    rng = np.random.default_rng(seed)
    evaluators = [ClassEvaluator(dims, tag, norm, Method.OPERATORS)]
    if has_closed_form(evaluators[0].tag, len(dims)):
        evaluators.append(ClassEvaluator(dims, tag, norm, Method.CLOSED))

    residual = 0.0
    for _ in range(samples):
        state = random_state(dims, rng)
        dense = concurrence_via_operators(state, tag, norm, dense_limit).value
        for evaluator in evaluators:
            residual = max(residual, abs(evaluator.value(state.amplitudes) - dense))
    claim = f"{tag}-oracle-" + "x".join(str(n) for n in dims)
    logger.debug(f"{claim}: residual {residual}")
    return InvarianceResult(claim, residual, samples, ORACLE_THRESHOLD)


def check_w_local_unitary_variation(
    m: int,
    samples: int = 20,
    seed: Seed = None,
    norm: Optional[NormalizationConvention] = None,
) -> InvarianceResult:
    """
    Largest change of the W-class value of random qubit states under random local
    unitaries. Informational: no invariance is asserted for three or more
    subsystems.
    """
    dims = (2,) * m
    rng = np.random.default_rng(seed)
    evaluator = ClassEvaluator(dims, ClassTag.W, norm)
    residual = 0.0
    for _ in range(samples):
        state = random_state(dims, rng)
        rotated = apply_local(state, random_local_unitaries(dims, rng))
        residual = max(
            residual,
            abs(evaluator.value(rotated.amplitudes) - evaluator.value(state.amplitudes)),
        )
    return InvarianceResult(
        f"w-lu-m{m}", residual, samples, SLOCC_THRESHOLD, Expectation.INFORMATIONAL
    )
