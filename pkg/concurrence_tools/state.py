# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Pure multipartite states.

A `PureState` wraps a dense complex amplitude tensor of shape (N_1, ..., N_m). All
public index arguments and results are 1-based, so that the basis state |1, 2, 1>
is addressed as `(1, 2, 1)`. Internally numpy's 0-based indexing is used.
"""

import logging
from enum import Enum
from functools import reduce
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    BadDims,
    BadLabel,
    DuplicateEntry,
    IndexOutOfRange,
    NonFiniteAmplitude,
    NotNormalized,
    ShapeMismatch,
    ZeroState,
)

logger = logging.getLogger("concurrence")

Index = Tuple[int, ...]
Seed = Union[None, int, np.random.SeedSequence, np.random.Generator]


class EnumArg(Enum):
    def __str__(self):
        return self.value


class StateKind(EnumArg):
    """
    Named state constructors
    """

    W = "w"
    GHZ = "ghz"
    BELL = "bell"
    PRODUCT = "product"
    CUSTOM = "custom"


class StateLabel:
    """
    Describes a named state: W(m), GHZ(m, d), Bell, Product(factors) or Custom.
    """

    def __init__(
        self,
        kind: StateKind,
        m: Optional[int] = None,
        local_dim: int = 2,
        factors: Optional[Sequence[Sequence[complex]]] = None,
    ):
        self.kind = kind
        self.m = m
        self.local_dim = local_dim
        self.factors = [np.asarray(f, dtype=np.complex128) for f in factors or []]

    @staticmethod
    def w(m: int) -> "StateLabel":
        return StateLabel(StateKind.W, m=m)

    @staticmethod
    def ghz(m: int, local_dim: int = 2) -> "StateLabel":
        return StateLabel(StateKind.GHZ, m=m, local_dim=local_dim)

    @staticmethod
    def bell() -> "StateLabel":
        return StateLabel(StateKind.BELL, m=2)

    @staticmethod
    def product(factors: Sequence[Sequence[complex]]) -> "StateLabel":
        return StateLabel(StateKind.PRODUCT, m=len(factors), factors=factors)

    @staticmethod
    def custom() -> "StateLabel":
        return StateLabel(StateKind.CUSTOM)

    def __str__(self) -> str:
        if self.kind == StateKind.W:
            return f"W({self.m})"
        if self.kind == StateKind.GHZ:
            return f"GHZ({self.m},{self.local_dim})"
        if self.kind == StateKind.PRODUCT:
            return f"Product({len(self.factors)})"
        return str(self.kind).capitalize()

    def __repr__(self) -> str:
        return f"StateLabel<{self}>"


class PureState:
    """
    Immutable pure state over subsystems of dimensions (N_1, ..., N_m).
    """

    NORM_TOLERANCE = 1e-9

    def __init__(
        self,
        amplitudes: Union[np.ndarray, Sequence],
        unnormalized: bool = False,
        label: Optional[StateLabel] = None,
    ):
        """
        Create a state from a dense amplitude tensor.

        Args:
            amplitudes: complex array whose shape is the list of local dimensions
            unnormalized (bool, optional): skip the norm check. Defaults to False.
            label (StateLabel, optional): name of the state, for reporting only.

        Raises:
            BadDims: if the array is 0-dimensional or has an empty axis
            NonFiniteAmplitude: if any amplitude is NaN or infinite
            ZeroState: if all amplitudes vanish
            NotNormalized: if the norm deviates from 1 by more than NORM_TOLERANCE
        """
        array = np.array(amplitudes, dtype=np.complex128)
        if array.ndim == 0 or 0 in array.shape:
            raise BadDims(array.shape)
        finite = np.isfinite(array)
        if not np.all(finite):
            raise NonFiniteAmplitude(int(np.count_nonzero(~finite)))
        if not np.any(array):
            raise ZeroState()

        norm = float(np.linalg.norm(array))
        if not unnormalized and not abs(norm - 1.0) <= self.NORM_TOLERANCE:
            raise NotNormalized(norm)

        array.setflags(write=False)
        self._amplitudes = array
        self.label = label if label is not None else StateLabel.custom()

    @property
    def amplitudes(self) -> np.ndarray:
        """Read-only amplitude tensor, 0-based numpy indexing."""
        return self._amplitudes

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(self._amplitudes.shape)

    @property
    def m(self) -> int:
        return self._amplitudes.ndim

    @property
    def size(self) -> int:
        return int(self._amplitudes.size)

    def amplitude(self, index: Sequence[int]) -> complex:
        """
        Amplitude of the basis state |k_1, ..., k_m>, with 1-based k_j.
        """
        _check_index(index, self.dims)
        return complex(self._amplitudes[tuple(k - 1 for k in index)])

    def norm(self) -> float:
        return float(np.linalg.norm(self._amplitudes))

    def vector(self) -> np.ndarray:
        """Amplitudes flattened in subsystem order 1..m (last subsystem fastest)."""
        return self._amplitudes.reshape(-1)

    def entries(self, tolerance: float = 0.0) -> Iterator[Tuple[Index, complex]]:
        """
        Yield (1-based index, amplitude) for every amplitude with modulus > tolerance.
        """
        for index in zip(*np.nonzero(np.abs(self._amplitudes) > tolerance)):
            yield tuple(int(k) + 1 for k in index), complex(self._amplitudes[index])

    def isclose(self, other: "PureState", atol: float = 1e-12) -> bool:
        return self.dims == other.dims and bool(
            np.allclose(self._amplitudes, other._amplitudes, rtol=0.0, atol=atol)
        )

    def __repr__(self) -> str:
        return f"PureState<{self.label}, dims={self.dims}>"


def _check_dims(dims: Sequence[int]) -> Tuple[int, ...]:
    try:
        dims = tuple(int(n) for n in dims)
    except (TypeError, ValueError):
        raise BadDims(dims)
    if len(dims) == 0 or any(n < 1 for n in dims):
        raise BadDims(dims)
    return dims


def _check_index(index: Sequence[int], dims: Tuple[int, ...]):
    if len(index) != len(dims):
        raise IndexOutOfRange(index, dims)
    for k, n in zip(index, dims):
        if not 1 <= k <= n:
            raise IndexOutOfRange(index, n)


def new_state(
    dims: Sequence[int],
    entries: Iterable[Tuple[Sequence[int], complex]],
    unnormalized: bool = False,
) -> PureState:
    """
    Build a state from sparse 1-based (index, amplitude) records; missing
    amplitudes are zero.

    Raises:
        IndexOutOfRange, DuplicateEntry, NonFiniteAmplitude, NotNormalized, ZeroState
    """
    dims = _check_dims(dims)
    amplitudes = np.zeros(dims, dtype=np.complex128)
    seen = set()
    for index, value in entries:
        index = tuple(int(k) for k in index)
        _check_index(index, dims)
        if index in seen:
            raise DuplicateEntry(index)
        seen.add(index)
        amplitudes[tuple(k - 1 for k in index)] = value
    return PureState(amplitudes, unnormalized=unnormalized)


def conjugate(state: PureState) -> PureState:
    """
    Complex conjugation C_m in the computational basis.
    """
    return PureState(
        np.conj(state.amplitudes), unnormalized=True, label=state.label
    )


def named_state(label: StateLabel) -> PureState:
    """
    Construct one of the named states.

    W(m) is the equal superposition of all basis states with a single 2, GHZ(m, d)
    the equal superposition of |c, ..., c> for c = 1..d (d = 2 is the usual GHZ
    state; d > 2 is an extension), Bell is GHZ(2, 2), and Product the tensor
    product of its factors, each normalized first.

    Raises:
        BadLabel: for m < 2, d < 2, an empty product or a Custom label
        ZeroState: if a product factor is the zero vector
    """
    if label.kind == StateKind.BELL:
        return _ghz(2, 2, label)

    if label.kind == StateKind.W:
        if label.m is None or label.m < 2:
            raise BadLabel(f"W(m) needs m >= 2, got {label.m}")
        amplitudes = np.zeros((2,) * label.m, dtype=np.complex128)
        for j in range(label.m):
            index = [0] * label.m
            index[j] = 1
            amplitudes[tuple(index)] = 1 / np.sqrt(label.m)
        return PureState(amplitudes, label=label)

    if label.kind == StateKind.GHZ:
        if label.m is None or label.m < 2:
            raise BadLabel(f"GHZ(m, d) needs m >= 2, got {label.m}")
        if label.local_dim < 2:
            raise BadLabel(f"GHZ(m, d) needs d >= 2, got {label.local_dim}")
        return _ghz(label.m, label.local_dim, label)

    if label.kind == StateKind.PRODUCT:
        if not label.factors:
            raise BadLabel("Product needs at least one factor")
        factors = []
        for position, factor in enumerate(label.factors, start=1):
            norm = np.linalg.norm(factor)
            if factor.ndim != 1 or factor.size == 0:
                raise BadLabel(f"Product factor {position} must be a non-empty vector")
            if norm == 0:
                raise ZeroState(f"Product factor {position} is the zero vector")
            factors.append(factor / norm)
        return PureState(reduce(np.multiply.outer, factors), label=label)

    raise BadLabel(f"Cannot construct a state for label {label}")


def _ghz(m: int, d: int, label: StateLabel) -> PureState:
    amplitudes = np.zeros((d,) * m, dtype=np.complex128)
    for c in range(d):
        amplitudes[(c,) * m] = 1 / np.sqrt(d)
    return PureState(amplitudes, label=label)


def random_state(dims: Sequence[int], seed: Seed = None) -> PureState:
    """
    Draw amplitudes from the standard complex normal distribution and normalize.
    Deterministic for a fixed seed.
    """
    dims = _check_dims(dims)
    rng = np.random.default_rng(seed)
    amplitudes = rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
    return PureState(amplitudes / np.linalg.norm(amplitudes))


def apply_local(
    state: PureState, ops: Sequence[np.ndarray], renormalize: bool = False
) -> PureState:
    """
    Apply M_1 x ... x M_m to the state.

    Args:
        state (PureState): input state
        ops: one N_j x N_j complex matrix per subsystem
        renormalize (bool, optional): divide by the norm afterwards, needed for
            non-unitary (SLOCC) operators. Defaults to False.

    Raises:
        ShapeMismatch: if the number of matrices or a matrix shape is wrong
        ZeroState: if the operator annihilates the state
    """
    if len(ops) != state.m:
        raise ShapeMismatch(
            None, f"Expected {state.m} local operators, got {len(ops)}"
        )

    tensor = state.amplitudes
    for j, op in enumerate(ops):
        op = np.asarray(op, dtype=np.complex128)
        n = state.dims[j]
        if op.shape != (n, n):
            raise ShapeMismatch(
                j + 1, f"Operator {j + 1} has shape {op.shape}, expected {(n, n)}"
            )
        tensor = np.moveaxis(np.tensordot(op, tensor, axes=([1], [j])), 0, j)

    if renormalize:
        norm = np.linalg.norm(tensor)
        if norm < np.finfo(float).tiny:
            raise ZeroState("Local operators annihilate the state")
        return PureState(tensor / norm)
    return PureState(tensor, unnormalized=True)


def permute(state: PureState, order: Sequence[int]) -> PureState:
    """
    Reorder subsystems: subsystem j of the result is subsystem order[j] (1-based)
    of the input.
    """
    if sorted(order) != list(range(1, state.m + 1)):
        raise ShapeMismatch(
            None, f"{list(order)} is not a permutation of 1..{state.m}"
        )
    return PureState(
        np.transpose(state.amplitudes, [j - 1 for j in order]), unnormalized=True
    )


def bipartition(state: PureState, subsystems: Sequence[int]) -> PureState:
    """
    Regroup the state into a two-party state across the cut
    `subsystems` | rest (1-based subsystem numbers).
    """
    first = sorted(set(subsystems))
    if not first or len(first) == state.m or not set(first) <= set(
        range(1, state.m + 1)
    ):
        raise ShapeMismatch(
            None, f"{list(subsystems)} is not a proper cut of {state.m} subsystems"
        )
    rest = [j for j in range(1, state.m + 1) if j not in first]
    order = [j - 1 for j in first + rest]
    dim_a = int(np.prod([state.dims[j - 1] for j in first]))
    regrouped = np.transpose(state.amplitudes, order).reshape(dim_a, -1)
    return PureState(regrouped, unnormalized=True)


def tensor_product(*states: PureState) -> PureState:
    """Tensor product of states, subsystems concatenated in argument order."""
    if not states:
        raise BadLabel("tensor_product needs at least one state")
    amplitudes = reduce(np.multiply.outer, [s.amplitudes for s in states])
    return PureState(amplitudes, unnormalized=True)


def basis_state(dims: Sequence[int], index: Sequence[int]) -> PureState:
    """The computational basis state |index>, 1-based."""
    return new_state(dims, [(index, 1.0)])
