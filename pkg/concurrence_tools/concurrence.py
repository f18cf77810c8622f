# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Concurrence classes of pure multipartite states.

For a class X with operator family {O}, the class concurrence is

    C_X(psi) = sqrt( n_X(m) * sum_O |<psi| O C |psi>|^2 )

where C is complex conjugation in the computational basis, so the expectation is
`sum_IJ conj(a_I) O_IJ conj(a_J)`. Two routes are available here:

- `closed`: coefficient formulas. Each expectation reduces to signed sums of
  products `a[row] * a[complement of row]` over the k/l patterns of the operator's
  support, with identity subsystems summed inside the modulus.
- `operators`: apply every family member factor by factor to the conjugated
  amplitude tensor, which works for any number of subsystems.

The dense Kronecker route lives in `concurrence_tools.oracle`.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__ as version
from .errors import BadNormalization, BadSetting, NoClosedForm, TooFewParts
from .operators import ClassOperator, ClassTag, apply_operator, class_family
from .state import EnumArg, PureState, bipartition

logger = logging.getLogger("concurrence")

ZERO_THRESHOLD = 1e-9

PerArity = Union[None, float, Mapping[int, float]]


class Method(EnumArg):
    AUTO = "auto"
    CLOSED = "closed"
    OPERATORS = "operators"


class NormalizationConvention:
    """
    Normalization constants n_epr, n_w(m), n_ghz(m) and n_ghz_reduced(m).

    The defaults make the canonical states score 1: n_w(m) = m / (2 (m - 1)) for
    W(m) and n_ghz(m) = 2 / (m (m - 1)) for GHZ(m, 2). The bipartite and reduced
    GHZ constants default to 1. Each constant may be overridden by a single number
    or by a mapping {m: value}; arities missing from a mapping use the default.
    """

    DEFAULT_EPR = 1.0
    DEFAULT_GHZ_REDUCED = 1.0

    KEYS = ("epr", "w", "ghz", "ghz_reduced")

    @staticmethod
    def from_settings(settings: Dict) -> "NormalizationConvention":
        """
        Raises:
            BadSetting: if the block is not an object or has an unknown key
            BadNormalization: for a non-positive or non-numeric constant
        """
        if not isinstance(settings, Mapping):
            raise BadSetting("normalization", settings, "an object")
        settings = {k: v for k, v in settings.items() if k != "version"}
        unknown = sorted(set(settings) - set(NormalizationConvention.KEYS))
        if unknown:
            raise BadSetting(
                f"normalization.{unknown[0]}",
                settings[unknown[0]],
                f"a known key ({', '.join(NormalizationConvention.KEYS)})",
            )
        return NormalizationConvention(**settings)

    @staticmethod
    def unit() -> "NormalizationConvention":
        """All constants equal to 1, i.e. the raw operator sums."""
        return NormalizationConvention(epr=1.0, w=1.0, ghz=1.0, ghz_reduced=1.0)

    def __init__(
        self,
        epr: Optional[float] = None,
        w: PerArity = None,
        ghz: PerArity = None,
        ghz_reduced: PerArity = None,
    ):
        """
        Args:
            epr (float, optional): bipartite constant. Defaults to 1.
            w (float or dict, optional): W-class constant(s). Defaults to m / (2 (m - 1)).
            ghz (float or dict, optional): GHZ-class constant(s). Defaults to 2 / (m (m - 1)).
            ghz_reduced (float or dict, optional): reduced GHZ constant(s). Defaults to 1.

        Raises:
            BadNormalization: for a non-positive or non-numeric constant
        """
        self.epr = None if epr is None else _positive("epr", epr)
        self.w = _per_arity("w", w)
        self.ghz = _per_arity("ghz", ghz)
        self.ghz_reduced = _per_arity("ghz_reduced", ghz_reduced)

    def n_epr(self) -> float:
        return self.DEFAULT_EPR if self.epr is None else self.epr

    def n_w(self, m: int) -> float:
        return _lookup(self.w, m, m / (2 * (m - 1)))

    def n_ghz(self, m: int) -> float:
        return _lookup(self.ghz, m, 2 / (m * (m - 1)))

    def n_ghz_reduced(self, m: int) -> float:
        return _lookup(self.ghz_reduced, m, self.DEFAULT_GHZ_REDUCED)

    def for_class(self, tag: ClassTag, m: int) -> float:
        if tag == ClassTag.EPR:
            return self.n_epr()
        if tag == ClassTag.W:
            return self.n_w(m)
        if tag == ClassTag.GHZ_FULL:
            return self.n_ghz(m)
        return self.n_ghz_reduced(m)

    def override(self, key: str, value: PerArity) -> "NormalizationConvention":
        """Copy with one constant replaced; key is one of KEYS (or with a dash)."""
        key = key.replace("-", "_")
        if key not in self.KEYS:
            raise BadNormalization(key, value)
        settings = {k: getattr(self, k) for k in self.KEYS}
        settings[key] = value
        return NormalizationConvention(**settings)

    def get_settings(self) -> Dict:
        """
        A dictionary of the overrides in effect (null means default)
        """
        return {
            "epr": self.epr,
            "w": _settings_value(self.w),
            "ghz": _settings_value(self.ghz),
            "ghz_reduced": _settings_value(self.ghz_reduced),
            "version": version,
        }

    def __repr__(self) -> str:
        return f"NormalizationConvention<{self.get_settings()}>"


def _positive(name: str, value) -> float:
    try:
        number = float(Fraction(value) if isinstance(value, str) else value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise BadNormalization(name, value)
    if not np.isfinite(number) or number <= 0:
        raise BadNormalization(name, value)
    return number


def _per_arity(name: str, value: PerArity):
    if value is None:
        return None
    if isinstance(value, Mapping):
        try:
            return {int(m): _positive(f"{name}({m})", v) for m, v in value.items()}
        except ValueError:
            raise BadNormalization(name, value)
    return _positive(name, value)


def _lookup(value, m: int, default: float) -> float:
    if value is None:
        return default
    if isinstance(value, dict):
        return value.get(m, default)
    return value


def _settings_value(value):
    if isinstance(value, dict):
        return {str(m): v for m, v in sorted(value.items())}
    return value


# Closed-form coefficient tables. A row pattern names the level picked on each
# support subsystem (in subsystem order); the partner amplitude takes the other
# level everywhere. Rows start with "k" since a row and its complement give the
# same product.

_BIPARTITE_TERMS = (("kk", -1), ("kl", +1))

_GHZ3_TERMS = {
    (1, 2): (("kkk", -1), ("kkl", -1), ("klk", +1), ("kll", +1)),
    (1, 3): (("kkk", -1), ("kkl", +1), ("klk", -1), ("kll", +1)),
    (2, 3): (("kkk", -1), ("kkl", +1), ("klk", +1), ("kll", -1)),
}

_GHZ4_ROWS = ("kkkk", "kkkl", "kklk", "kkll", "klkk", "klkl", "kllk", "klll")

_GHZ4_SIGNS = {
    (1, 2): "----++++",
    (1, 3): "--++--++",
    (1, 4): "-+-+-+-+",
    (2, 3): "--++++--",
    (2, 4): "-+-++-+-",
    (3, 4): "-++--++-",
}

_GHZ4_TERMS = {
    position: tuple(
        (row, -1 if sign == "-" else +1) for row, sign in zip(_GHZ4_ROWS, signs)
    )
    for position, signs in _GHZ4_SIGNS.items()
}

# Reduced GHZ on four subsystems: the three included subsystems in order, half-pi
# on the first two, the excluded subsystem summed.
_GHZ_REDUCED4_TERMS = (("kkk", -1), ("kkl", -1), ("klk", +1), ("kll", +1))


def _closed_terms(tag: ClassTag, m: int, position: Tuple[int, ...]):
    if tag in (ClassTag.EPR, ClassTag.W):
        return _BIPARTITE_TERMS
    if tag == ClassTag.GHZ_FULL:
        if m == 3:
            return _GHZ3_TERMS[position]
        if m == 4:
            return _GHZ4_TERMS[position]
        return None
    if m == 3:
        # every reduced operator on three subsystems is a W operator
        return _BIPARTITE_TERMS
    if m == 4:
        return _GHZ_REDUCED4_TERMS
    return None


def has_closed_form(tag: ClassTag, m: int) -> bool:
    if tag == ClassTag.GHZ_FULL:
        return m in (2, 3, 4)
    if tag == ClassTag.GHZ_REDUCED:
        return m in (3, 4)
    return True


def _pattern_product(
    amplitudes: np.ndarray,
    support: Sequence[int],
    pairs: Sequence[Tuple[int, int]],
    row: str,
) -> complex:
    """
    sum over the identity subsystems of a[row] * a[complement], where `row` picks
    k or l on each support subsystem (0-based axes, 1-based pairs).
    """
    row_index: List = [slice(None)] * amplitudes.ndim
    col_index: List = [slice(None)] * amplitudes.ndim
    for axis, (k, l), choice in zip(support, pairs, row):
        first, second = (k, l) if choice == "k" else (l, k)
        row_index[axis] = first - 1
        col_index[axis] = second - 1
    return np.sum(amplitudes[tuple(row_index)] * amplitudes[tuple(col_index)])


def _closed_contribution(amplitudes: np.ndarray, op: ClassOperator, terms) -> float:
    support = [j - 1 for j in op.support]
    pairs = [op.factors[j].pair for j in support]
    total = sum(
        sign * _pattern_product(amplitudes, support, pairs, row) for row, sign in terms
    )
    return 4 * abs(total) ** 2


def _operator_contribution(conj_amplitudes: np.ndarray, op: ClassOperator) -> float:
    expectation = np.sum(conj_amplitudes * apply_operator(op, conj_amplitudes))
    return abs(expectation) ** 2


class ConcurrenceReport:
    """
    Result of one class evaluation.

    Attributes:
        tag (ClassTag): class actually evaluated (EPR for two subsystems)
        value (float): sqrt(normalization * sum of contributions)
        contributions (list): (operator description, |<psi|O C|psi>|^2) per
            family member, in family order
        positions (dict): contribution sub-sums keyed by the operator position
        normalization (float): constant used
        method (Method): route used
    """

    def __init__(
        self,
        tag: ClassTag,
        contributions: List[Tuple[str, float]],
        positions: Dict[Tuple[int, ...], float],
        normalization: float,
        method: Method,
    ):
        self.tag = tag
        self.contributions = contributions
        self.positions = positions
        self.normalization = normalization
        self.method = method
        self.squared = normalization * sum(c for _, c in contributions)
        self.value = float(np.sqrt(self.squared))

    @property
    def nonzero(self) -> bool:
        return self.squared > ZERO_THRESHOLD

    def per_position(self) -> Dict[Tuple[int, ...], float]:
        """
        Normalized class value restricted to each operator position.
        """
        return {
            position: float(np.sqrt(self.normalization * total))
            for position, total in self.positions.items()
        }

    def to_dict(self, breakdown: bool = False) -> Dict:
        result = {
            "class": str(self.tag),
            "value": self.value,
            "normalization": self.normalization,
            "method": str(self.method),
        }
        if breakdown:
            result["positions"] = [
                {"position": list(position), "contribution": total}
                for position, total in self.positions.items()
            ]
            result["operators"] = [
                {"operator": description, "contribution": contribution}
                for description, contribution in self.contributions
            ]
        return result

    def __repr__(self) -> str:
        return f"ConcurrenceReport<{self.tag}={self.value}>"


class ClassEvaluator:
    """
    Evaluates one class concurrence for a fixed shape. The family is built once, so
    repeated evaluation (as in the optimizer) only pays for the contractions.
    """

    def __init__(
        self,
        dims: Sequence[int],
        tag: ClassTag,
        norm: Optional[NormalizationConvention] = None,
        method: Union[Method, str] = Method.AUTO,
    ):
        norm = norm or NormalizationConvention()
        method = Method(method)
        self.dims = tuple(dims)
        m = len(self.dims)
        if m < 2:
            raise TooFewParts(m, 3 if tag == ClassTag.GHZ_REDUCED else 2, f"The {tag} class")

        self.requested = tag
        self.normalization = norm.for_class(tag, m)
        if m == 2 and tag in (ClassTag.W, ClassTag.GHZ_FULL):
            tag = ClassTag.EPR
        self.tag = tag

        if method == Method.AUTO:
            method = Method.CLOSED if has_closed_form(tag, m) else Method.OPERATORS
        elif method == Method.CLOSED and not has_closed_form(tag, m):
            raise NoClosedForm(tag, m)
        self.method = method

        self.family = class_family(self.dims, tag)
        self._terms = [
            _closed_terms(tag, m, op.position) if method == Method.CLOSED else None
            for op in self.family
        ]
        logger.debug(f"{self.requested} on dims {self.dims}: {self.method} route")

    def contributions(self, amplitudes: np.ndarray) -> np.ndarray:
        if self.method == Method.CLOSED:
            return np.array(
                [
                    _closed_contribution(amplitudes, op, terms)
                    for op, terms in zip(self.family, self._terms)
                ]
            )
        conj_amplitudes = np.conj(amplitudes)
        return np.array(
            [_operator_contribution(conj_amplitudes, op) for op in self.family]
        )

    def value(self, amplitudes: np.ndarray) -> float:
        return float(np.sqrt(self.normalization * np.sum(self.contributions(amplitudes))))

    def report(self, state: PureState) -> ConcurrenceReport:
        contributions = self.contributions(state.amplitudes)
        positions: Dict[Tuple[int, ...], float] = {}
        for op, contribution in zip(self.family, contributions):
            positions[op.position] = positions.get(op.position, 0.0) + float(contribution)
        return ConcurrenceReport(
            self.tag,
            [(op.describe(), float(c)) for op, c in zip(self.family, contributions)],
            positions,
            self.normalization,
            self.method,
        )


def concurrence(
    state: PureState,
    tag: ClassTag,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> ConcurrenceReport:
    return ClassEvaluator(state.dims, tag, norm, method).report(state)


def class_value(
    state: PureState,
    tag: ClassTag,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> float:
    """Class value only, without the per-operator report."""
    return ClassEvaluator(state.dims, tag, norm, method).value(state.amplitudes)


def concurrence_bipartite(
    state: PureState,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> ConcurrenceReport:
    """
    Bipartite (EPR) concurrence,
    sqrt(4 n_epr sum_{k1<l1, k2<l2} |a[k1,k2] a[l1,l2] - a[k1,l2] a[l1,k2]|^2).

    Raises:
        WrongArity: if the state is not bipartite
    """
    return concurrence(state, ClassTag.EPR, norm, method)


def concurrence_w(
    state: PureState,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> ConcurrenceReport:
    """
    W-class concurrence. On two subsystems this is the bipartite concurrence with
    n_w(2) in place of n_epr.
    """
    return concurrence(state, ClassTag.W, norm, method)


def concurrence_ghz(
    state: PureState,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> ConcurrenceReport:
    """
    GHZ-class concurrence over the full family (two half-pi factors, pi factors on
    all other subsystems). Closed forms exist for up to four subsystems.
    """
    return concurrence(state, ClassTag.GHZ_FULL, norm, method)


def concurrence_ghz_reduced(
    state: PureState,
    norm: Optional[NormalizationConvention] = None,
    method: Union[Method, str] = Method.AUTO,
) -> ConcurrenceReport:
    """
    Reduced GHZ-class concurrence (one identity factor). Needs three or more
    subsystems; on exactly three it coincides with the W class up to normalization.
    """
    return concurrence(state, ClassTag.GHZ_REDUCED, norm, method)


def applicable_classes(m: int) -> List[ClassTag]:
    if m < 2:
        return []
    if m == 2:
        return [ClassTag.EPR]
    return [ClassTag.W, ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED]


def optimized_classes(m: int) -> List[ClassTag]:
    """
    Classes maximized over local unitaries by `classify`. The reduced GHZ family
    on three subsystems is the W family, so it only counts from four on.
    """
    if m < 3:
        return []
    if m == 3:
        return [ClassTag.GHZ_FULL]
    return [ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED]


class Verdict(EnumArg):
    FULLY_SEPARABLE = "fully-separable"
    ENTANGLED = "entangled"
    W_CLASS = "w-class"
    GHZ_REDUCED = "ghz-reduced"
    GENUINE_GHZ = "genuine-ghz"


def _cuts(m: int):
    """Every bipartition of 1..m once, as the side containing subsystem 1."""
    for size in range(m - 1):
        for others in combinations(range(2, m + 1), size):
            yield (1,) + others


def entangled_across_cuts(state: PureState) -> bool:
    """
    Whether no bipartition of the subsystems splits the state into a product.

    Decided on the squared I-concurrence of each cut, from its Schmidt
    coefficients, against ZERO_THRESHOLD. Invariant under local unitaries.
    """
    for cut in _cuts(state.m):
        schmidt = np.linalg.svd(bipartition(state, cut).amplitudes, compute_uv=False)
        weights = schmidt**2 / np.sum(schmidt**2)
        if 2 * (1 - np.sum(weights**2)) <= ZERO_THRESHOLD:
            logger.debug(f"{state} is a product across the cut {list(cut)}")
            return False
    return True


class ClassificationReport:
    """
    All applicable class values of a state, the local-unitary maximized GHZ values
    and the overall verdict.

    A GHZ class counts as found when its value is nonzero in the given frame or
    its maximized value is above the genuineness threshold. The maximized search
    is one-sided: a False `genuine` flag only means nothing above the threshold
    was found. `genuine-ghz` additionally requires entanglement across every cut.
    """

    def __init__(
        self,
        reports: Dict[ClassTag, ConcurrenceReport],
        optimized: Dict,
        genuine: Dict[ClassTag, bool],
        verdict: Verdict,
        norm: NormalizationConvention,
        optimizer_settings: Optional[Dict] = None,
        all_cuts_entangled: Optional[bool] = None,
    ):
        self.reports = reports
        self.optimized = optimized
        self.genuine = genuine
        self.verdict = verdict
        self.norm = norm
        self.optimizer_settings = optimizer_settings
        self.all_cuts_entangled = all_cuts_entangled

    def value(self, tag: ClassTag) -> float:
        return self.reports[tag].value

    def to_dict(self, breakdown: bool = False) -> Dict:
        classes = {}
        for tag, report in self.reports.items():
            entry = report.to_dict(breakdown)
            entry["nonzero"] = report.nonzero
            if tag in self.optimized:
                result = self.optimized[tag]
                entry["optimized"] = result.value
                entry["converged"] = result.converged
                entry["genuine"] = self.genuine[tag]
            classes[str(tag)] = entry
        settings = {"normalization": self.norm.get_settings()}
        if self.optimizer_settings is not None:
            settings["optimizer"] = self.optimizer_settings
        result = {"classes": classes, "verdict": str(self.verdict)}
        if self.all_cuts_entangled is not None:
            result["all_cuts_entangled"] = self.all_cuts_entangled
        result["settings"] = settings
        return result


def decide_verdict(
    m: int,
    nonzero: Dict[ClassTag, bool],
    genuine: Dict[ClassTag, bool],
    all_cuts_entangled: bool,
) -> Verdict:
    """
    Overall verdict from the raw nonzero flags, the maximized genuine flags and
    the cut test.
    """
    if not any(nonzero.values()) and not any(genuine.values()):
        return Verdict.FULLY_SEPARABLE
    if m == 2:
        return Verdict.ENTANGLED

    def found(tag: ClassTag) -> bool:
        return nonzero.get(tag, False) or genuine.get(tag, False)

    if found(ClassTag.GHZ_FULL) and all_cuts_entangled:
        return Verdict.GENUINE_GHZ
    if m >= 4 and found(ClassTag.GHZ_REDUCED):
        return Verdict.GHZ_REDUCED
    return Verdict.W_CLASS


def classify(
    state: PureState,
    norm: Optional[NormalizationConvention] = None,
    config=None,
    callback=None,
) -> ClassificationReport:
    """
    Evaluate every applicable class, maximize the GHZ classes over local
    unitaries and decide a verdict.

    Args:
        state (PureState): state with at least two subsystems
        norm (NormalizationConvention, optional): defaults to the canonical convention
        config (OptimizerConfig, optional): optimizer settings, including the
            genuineness threshold
        callback (callable, optional): passed on to `maximize_class`

    Raises:
        TooFewParts: for a single subsystem
        TooLarge: if the optimizer cannot handle the state size
    """
    from .optimizer import OptimizerConfig, genuineness_verdict, maximize_class

    norm = norm or NormalizationConvention()
    config = config or OptimizerConfig()
    if state.m < 2:
        raise TooFewParts(state.m, 2, "Classification")

    reports = {tag: concurrence(state, tag, norm) for tag in applicable_classes(state.m)}

    optimized = {}
    genuine = {}
    for tag in optimized_classes(state.m):
        optimized[tag] = maximize_class(state, tag, norm, config, callback)
        genuine[tag] = genuineness_verdict(optimized[tag].value, config.threshold)

    nonzero = {tag: report.nonzero for tag, report in reports.items()}
    all_cuts_entangled = entangled_across_cuts(state)
    verdict = decide_verdict(state.m, nonzero, genuine, all_cuts_entangled)
    logger.debug(f"Verdict for {state}: {verdict}")

    return ClassificationReport(
        reports,
        optimized,
        genuine,
        verdict,
        norm,
        config.get_settings(),
        all_cuts_entangled,
    )
