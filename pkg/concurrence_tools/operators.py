# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Pair-complement operators and the class-operator families.

A single-subsystem pair complement acts on the two levels (k, l) of an N-level
subsystem:

    M[k, l] = exp(i phi),  M[l, k] = exp(-i phi),  all other entries 0

A class operator is a tensor product of one factor per subsystem, each factor being
the identity, a pair complement at phi = pi/2 ("half-pi") or at phi = pi ("pi"):

| class         | factors                                                   |
|---------------|-----------------------------------------------------------|
| `epr`         | two half-pi factors (two subsystems)                      |
| `w`           | two half-pi factors at r1 < r2, identity elsewhere        |
| `ghz`         | two half-pi factors at r1 < r2, pi elsewhere              |
| `ghz-reduced` | one identity, half-pi on the two lowest of the remaining  |
|               | m - 1 subsystems, pi on the others                        |

Families are enumerated by subsystem positions first (in `itertools.combinations`
order), then by level pairs (in `itertools.product` order over the non-identity
factors, pairs with k < l in lexicographic order). All levels and subsystems are
1-based.
"""

import logging
from enum import Enum
from functools import reduce
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from .errors import BadPair, MissingPhase, TooFewParts, TooLarge, WrongArity
from .state import EnumArg, _check_dims

logger = logging.getLogger("concurrence")

DEFAULT_DENSE_LIMIT = 4096

HALF_PI = np.pi / 2

Pair = Tuple[int, int]
PhaseTable = Mapping[Pair, float]


class ClassTag(EnumArg):
    EPR = "epr"
    W = "w"
    GHZ_FULL = "ghz"
    GHZ_REDUCED = "ghz-reduced"


class FactorKind(Enum):
    IDENTITY = "I"
    HALF_PI = "h"
    PI = "p"


class PairComplement:
    """
    Pair complement on levels (k, l) of an N-level subsystem.
    """

    def __init__(self, dim: int, k: int, l: int, phase: float):
        if not 1 <= k < l <= dim:
            raise BadPair(k, l, dim)
        self.dim = dim
        self.pair = (k, l)
        self.phase = float(phase)

    def matrix(self) -> np.ndarray:
        k, l = self.pair
        m = np.zeros((self.dim, self.dim), dtype=np.complex128)
        m[k - 1, l - 1] = np.exp(1j * self.phase)
        m[l - 1, k - 1] = np.exp(-1j * self.phase)
        return m

    def apply(self, tensor: np.ndarray, axis: int) -> np.ndarray:
        """
        Apply the matrix to one axis of a tensor without materializing it.
        """
        k, l = self.pair
        out = np.zeros_like(tensor)
        src = [slice(None)] * tensor.ndim
        dst = [slice(None)] * tensor.ndim
        dst[axis], src[axis] = k - 1, l - 1
        out[tuple(dst)] = np.exp(1j * self.phase) * tensor[tuple(src)]
        dst[axis], src[axis] = l - 1, k - 1
        out[tuple(dst)] = np.exp(-1j * self.phase) * tensor[tuple(src)]
        return out

    def __repr__(self) -> str:
        return f"PairComplement<dim={self.dim}, pair={self.pair}, phase={self.phase}>"


def pair_complement(dim: int, k: int, l: int, phase: float) -> PairComplement:
    return PairComplement(dim, k, l, phase)


def _phase(phases: PhaseTable, k: int, l: int) -> float:
    if (k, l) in phases:
        return float(phases[(k, l)])
    if (l, k) in phases:
        return -float(phases[(l, k)])
    raise MissingPhase(k, l)


class FullPovm:
    """
    Symmetric POVM element on one subsystem: ones on the diagonal, exp(i phi_kl)
    above and exp(-i phi_kl) below.

    The phase table is keyed by 1-based level pairs. A key (l, k) with l > k is
    accepted and read as phi_kl = -phi_lk.
    """

    def __init__(self, dim: int, phases: PhaseTable):
        self.dim = dim
        self.phases: Dict[Pair, float] = {
            (k, l): _phase(phases, k, l)
            for k, l in combinations(range(1, dim + 1), 2)
        }

    def matrix(self) -> np.ndarray:
        m = np.eye(self.dim, dtype=np.complex128)
        for (k, l), phi in self.phases.items():
            m[k - 1, l - 1] = np.exp(1j * phi)
            m[l - 1, k - 1] = np.exp(-1j * phi)
        return m


def build_povm(dim: int, phases: PhaseTable) -> FullPovm:
    return FullPovm(dim, phases)


def uniform_phases(dim: int, phase: float) -> Dict[Pair, float]:
    """Phase table assigning the same phase to every level pair."""
    return {pair: phase for pair in combinations(range(1, dim + 1), 2)}


def pair_sum(dim: int, phases: PhaseTable) -> np.ndarray:
    """
    Sum of the pair complements over all level pairs of one subsystem.
    """
    total = np.zeros((dim, dim), dtype=np.complex128)
    for k, l in combinations(range(1, dim + 1), 2):
        total += pair_complement(dim, k, l, _phase(phases, k, l)).matrix()
    return total


def povm_complement(
    dims: Sequence[int],
    phases: Sequence[PhaseTable],
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> np.ndarray:
    """
    Dense orthogonal complement I - (Delta_1 x ... x Delta_m) of a product POVM
    element.

    Args:
        dims: local dimensions
        phases: one phase table per subsystem
        dense_limit (int, optional): maximal total dimension

    Raises:
        TooLarge: if the total dimension exceeds `dense_limit`
        MissingPhase: if a phase table is incomplete
    """
    dims = _check_dims(dims)
    if len(phases) != len(dims):
        raise WrongArity(len(phases), len(dims))
    size = int(np.prod(dims))
    if size > dense_limit:
        raise TooLarge(size, dense_limit)
    delta = reduce(np.kron, [build_povm(n, p).matrix() for n, p in zip(dims, phases)])
    return np.eye(size, dtype=np.complex128) - delta


class Factor:
    """
    One tensor factor of a class operator.
    """

    def __init__(self, kind: FactorKind, dim: int, pair: Optional[Pair] = None):
        self.kind = kind
        self.dim = dim
        self.pair = pair
        if kind == FactorKind.IDENTITY:
            self._pair_op = None
        else:
            phase = HALF_PI if kind == FactorKind.HALF_PI else np.pi
            self._pair_op = PairComplement(dim, pair[0], pair[1], phase)

    def matrix(self) -> np.ndarray:
        if self._pair_op is None:
            return np.eye(self.dim, dtype=np.complex128)
        return self._pair_op.matrix()

    def apply(self, tensor: np.ndarray, axis: int) -> np.ndarray:
        if self._pair_op is None:
            return tensor
        return self._pair_op.apply(tensor, axis)

    def __str__(self) -> str:
        if self.kind == FactorKind.IDENTITY:
            return "I"
        return f"{self.kind.value}{self.pair[0]}{self.pair[1]}"


class ClassOperator:
    """
    Tensor product of per-subsystem factors, tagged with its class.

    Attributes:
        tag (ClassTag): the class family it belongs to
        position (tuple): 1-based subsystems it is positioned on, (r1, r2) for
            EPR/W/GHZ and the included (m-1)-subset for GHZ-reduced
        factors (tuple of Factor): factor j acts on subsystem j + 1
    """

    def __init__(self, tag: ClassTag, position: Tuple[int, ...], factors: Sequence[Factor]):
        self.tag = tag
        self.position = tuple(position)
        self.factors = tuple(factors)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def multi_index(self) -> Tuple[Optional[Pair], ...]:
        """The chosen level pairs, None on identity factors."""
        return tuple(f.pair for f in self.factors)

    @property
    def support(self) -> Tuple[int, ...]:
        """1-based subsystems with a non-identity factor."""
        return tuple(
            j + 1 for j, f in enumerate(self.factors) if f.kind != FactorKind.IDENTITY
        )

    def describe(self) -> str:
        """
        Compact text form, e.g. `h12 h12 I` for the W operator on subsystems 1, 2.
        """
        return " ".join(str(f) for f in self.factors)

    def matrices(self) -> List[np.ndarray]:
        return [f.matrix() for f in self.factors]

    def __repr__(self) -> str:
        return f"ClassOperator<{self.tag}: {self.describe()}>"


def _level_pairs(dim: int) -> List[Pair]:
    return list(combinations(range(1, dim + 1), 2))


def _positioned(
    tag: ClassTag, dims: Tuple[int, ...], position: Tuple[int, ...], kinds: List[FactorKind]
) -> List[ClassOperator]:
    active = [j for j, kind in enumerate(kinds) if kind != FactorKind.IDENTITY]
    operators = []
    for pairs in product(*(_level_pairs(dims[j]) for j in active)):
        chosen = dict(zip(active, pairs))
        factors = [
            Factor(kind, dims[j], chosen.get(j)) for j, kind in enumerate(kinds)
        ]
        operators.append(ClassOperator(tag, position, factors))
    return operators


def _positions(tag: ClassTag, m: int):
    """
    Yield (position, factor kinds) for every positioned operator of a class.
    """
    subsystems = range(1, m + 1)
    if tag == ClassTag.GHZ_REDUCED:
        for included in combinations(subsystems, m - 1):
            kinds = [FactorKind.IDENTITY] * m
            for rank, r in enumerate(included):
                kinds[r - 1] = FactorKind.HALF_PI if rank < 2 else FactorKind.PI
            yield included, kinds
        return

    rest = FactorKind.PI if tag == ClassTag.GHZ_FULL else FactorKind.IDENTITY
    for r1, r2 in combinations(subsystems, 2):
        kinds = [rest] * m
        kinds[r1 - 1] = kinds[r2 - 1] = FactorKind.HALF_PI
        yield (r1, r2), kinds


def _check_arity(tag: ClassTag, m: int):
    required = 3 if tag == ClassTag.GHZ_REDUCED else 2
    if m < required:
        raise TooFewParts(m, required, f"The {tag} class")
    if tag == ClassTag.EPR and m != 2:
        raise WrongArity(m)


def class_family(dims: Sequence[int], tag: ClassTag) -> List[ClassOperator]:
    """
    Enumerate every operator of a class family for the given local dimensions.

    Subsystems of dimension 1 admit no level pairs, so positioned operators that
    need a pair there contribute no members.

    Raises:
        TooFewParts: fewer than 2 subsystems (3 for GHZ-reduced)
        WrongArity: EPR on other than 2 subsystems
    """
    dims = _check_dims(dims)
    _check_arity(tag, len(dims))
    family = [
        op
        for position, kinds in _positions(tag, len(dims))
        for op in _positioned(tag, dims, position, kinds)
    ]
    logger.debug(f"{tag} family for dims {dims}: {len(family)} operators")
    return family


def family_size(dims: Sequence[int], tag: ClassTag) -> int:
    """
    Number of operators in a family, without building it.
    """
    dims = _check_dims(dims)
    _check_arity(tag, len(dims))
    pairs = [int(comb(n, 2, exact=True)) for n in dims]
    return sum(
        int(np.prod([pairs[j] for j, kind in enumerate(kinds) if kind != FactorKind.IDENTITY]))
        for _, kinds in _positions(tag, len(dims))
    )


def materialize(op: ClassOperator, dense_limit: int = DEFAULT_DENSE_LIMIT) -> np.ndarray:
    """
    Dense Kronecker product of the factors in subsystem order.

    Raises:
        TooLarge: if the total dimension exceeds `dense_limit`
    """
    size = int(np.prod(op.dims))
    if size > dense_limit:
        raise TooLarge(size, dense_limit)
    return reduce(np.kron, op.matrices())


def apply_operator(op: ClassOperator, tensor: np.ndarray) -> np.ndarray:
    """
    Apply a class operator to an amplitude tensor factor by factor. The result
    equals `materialize(op) @ tensor.reshape(-1)`, reshaped back to the tensor
    shape.
    """
    for axis, factor in enumerate(op.factors):
        tensor = factor.apply(tensor, axis)
    return tensor
