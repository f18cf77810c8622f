# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Exceptions raised by concurrence_tools.

Everything derives from `ConcurrenceError`, which is a `RuntimeError`. The two
intermediate classes `InputError` and `MismatchError` decide the exit code of the
command line front end (2 and 3, respectively).
"""

from typing import Any, Optional, Sequence, Tuple


class ConcurrenceError(RuntimeError):
    pass


class InputError(ConcurrenceError):
    """The caller supplied an invalid state, label, or setting."""


class MismatchError(ConcurrenceError):
    """The input is valid on its own but does not fit the requested operation."""


class IndexOutOfRange(InputError):
    def __init__(self, index: Sequence[int], dim: Any):
        self.index = tuple(index)
        self.dim = dim
        super().__init__(
            f"Index {self.index} is out of range for dims {dim}; indices are 1-based"
        )


class DuplicateEntry(InputError):
    def __init__(self, index: Sequence[int]):
        self.index = tuple(index)
        super().__init__(f"Amplitude for index {self.index} given more than once")


class NotNormalized(InputError):
    def __init__(self, norm: float):
        self.norm = norm
        super().__init__(
            f"State has norm {norm!r}, expected 1; pass unnormalized=True to accept it"
        )


class NonFiniteAmplitude(InputError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"State has {count} NaN or infinite amplitude(s)")


class ZeroState(InputError):
    def __init__(self, message: str = "All amplitudes are zero"):
        super().__init__(message)


class BadLabel(InputError):
    pass


class BadDims(InputError):
    def __init__(self, dims: Any):
        self.dims = dims
        super().__init__(
            f"Dimensions must be a non-empty list of positive integers, got {dims!r}"
        )


class BadPair(InputError):
    def __init__(self, k: int, l: int, dim: int):
        self.k = k
        self.l = l
        self.dim = dim
        super().__init__(f"Pair ({k}, {l}) needs 1 <= k < l <= {dim}")


class MissingPhase(InputError):
    def __init__(self, k: int, l: int):
        self.k = k
        self.l = l
        super().__init__(f"No phase given for level pair ({k}, {l})")


class BadNormalization(InputError):
    def __init__(self, name: str, value: Any):
        self.name = name
        self.value = value
        super().__init__(
            f"Normalization constant {name} must be a positive number, got {value!r}"
        )


class BadSetting(InputError):
    def __init__(self, name: str, value: Any, requirement: str):
        self.name = name
        self.value = value
        super().__init__(f"Setting {name} must be {requirement}, got {value!r}")


class StateFileError(InputError):
    def __init__(self, field: Optional[str], message: str):
        self.field = field
        if field is None:
            super().__init__(message)
        else:
            super().__init__(f"Field '{field}': {message}")


class ShapeMismatch(MismatchError):
    def __init__(self, position: Any, message: Optional[str] = None):
        self.position = position
        super().__init__(message or f"Shape mismatch at position {position}")


class TooFewParts(MismatchError):
    def __init__(self, m: int, required: int, what: str = "this class"):
        self.m = m
        self.required = required
        super().__init__(f"{what} needs at least {required} subsystems, got {m}")


class TooLarge(MismatchError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(
            f"Total dimension {size} exceeds the dense limit of {limit}"
        )


class WrongArity(MismatchError):
    def __init__(self, m: int, expected: int = 2):
        self.m = m
        super().__init__(f"Expected a {expected}-partite state, got {m} subsystems")


class WrongShape(MismatchError):
    def __init__(self, dims: Tuple[int, ...], expected: str):
        self.dims = tuple(dims)
        super().__init__(f"Expected {expected}, got dims {self.dims}")


class SingularDraw(ConcurrenceError):
    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(f"No invertible matrix drawn after {attempts} attempts")


class NoClosedForm(MismatchError):
    def __init__(self, tag: Any, m: int):
        self.tag = tag
        self.m = m
        super().__init__(
            f"No closed-form expression for the {tag} class with {m} subsystems; "
            "use the operator route"
        )
