# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Reference routes used to verify the class concurrences: dense operator
expectations, the two-qubit Wootters concurrence and the I-concurrence from the
reduced density matrix.
"""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .concurrence import ConcurrenceReport, NormalizationConvention
from .errors import ShapeMismatch, WrongShape
from .operators import DEFAULT_DENSE_LIMIT, ClassTag, class_family, materialize
from .state import PureState

logger = logging.getLogger("concurrence")


def expectation(state: PureState, matrix: np.ndarray) -> complex:
    """
    Antilinear expectation sum_IJ conj(a_I) M_IJ conj(a_J).

    Raises:
        ShapeMismatch: if M is not (size x size) for the state
    """
    matrix = np.asarray(matrix)
    if matrix.shape != (state.size, state.size):
        raise ShapeMismatch(
            None,
            f"Matrix shape {matrix.shape} does not fit a state of size {state.size}",
        )
    bra = np.conj(state.vector())
    return complex(bra @ matrix @ bra)


def concurrence_via_operators(
    state: PureState,
    tag: ClassTag,
    norm: Optional[NormalizationConvention] = None,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> ConcurrenceReport:
    """
    Class concurrence from materialized family members.

    Raises:
        TooLarge: if the state size exceeds `dense_limit`
    """
    norm = norm or NormalizationConvention()
    normalization = norm.for_class(tag, state.m)
    if state.m == 2 and tag in (ClassTag.W, ClassTag.GHZ_FULL):
        tag = ClassTag.EPR

    contributions = []
    positions: Dict[Tuple[int, ...], float] = {}
    for op in class_family(state.dims, tag):
        contribution = abs(expectation(state, materialize(op, dense_limit))) ** 2
        contributions.append((op.describe(), contribution))
        positions[op.position] = positions.get(op.position, 0.0) + contribution
    logger.debug(f"Dense {tag} on dims {state.dims}: {len(contributions)} operators")
    return ConcurrenceReport(tag, contributions, positions, normalization, "dense")


def wootters(state: PureState) -> float:
    """
    Two-qubit concurrence 2 |a11 a22 - a12 a21|.

    Raises:
        WrongShape: if the state is not on two qubits
    """
    if state.dims != (2, 2):
        raise WrongShape(state.dims, "two qubits (2, 2)")
    a = state.amplitudes
    return float(2 * abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]))


class ReducedDensity:
    """
    Reduced density matrix on a set of kept subsystems (1-based, ascending).
    """

    def __init__(self, subsystems: Tuple[int, ...], matrix: np.ndarray):
        self.subsystems = subsystems
        self.matrix = matrix

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def purity(self) -> float:
        """Tr rho^2"""
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


def reduced_density(state: PureState, keep: Sequence[int]) -> ReducedDensity:
    """
    Trace out every subsystem not in `keep`.

    Raises:
        ShapeMismatch: if `keep` names a subsystem outside 1..m
    """
    kept = tuple(sorted(set(keep)))
    if not set(kept) <= set(range(1, state.m + 1)):
        raise ShapeMismatch(None, f"Cannot keep subsystems {list(keep)} of {state.m}")
    traced = [j for j in range(state.m) if j + 1 not in kept]
    a = state.amplitudes
    rho = np.tensordot(a, np.conj(a), axes=(traced, traced))
    dim = int(np.prod([state.dims[j - 1] for j in kept]))
    return ReducedDensity(kept, rho.reshape(dim, dim))


def i_concurrence(state: PureState, subsystem: int = 1) -> float:
    """
    I-concurrence sqrt(2 (1 - Tr rho^2)) of a bipartite state, with rho the
    reduction onto `subsystem`.

    Raises:
        WrongShape: if the state is not bipartite
    """
    if state.m != 2:
        raise WrongShape(state.dims, "a bipartite state")
    rho = reduced_density(state, [subsystem])
    purity = rho.purity() / rho.trace() ** 2
    return float(np.sqrt(max(0.0, 2 * (1 - purity))))
