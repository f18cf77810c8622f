# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

"""
Maximization of the GHZ-class concurrences over local unitaries.

Each local unitary is parametrized as U_j = expm(i H(theta_j)) with theta_j a real
vector of length N_j^2 and H the expansion over the standard Hermitian basis. The
search is a random-restart local ascent: every iteration perturbs the parameters
of one subsystem (cycling through the subsystems) by a Gaussian step whose scale
decays geometrically, and keeps the move if the objective improves. The first
restart starts at the identity, so the result is never below the input value.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from . import __version__ as version
from .concurrence import ClassEvaluator, NormalizationConvention
from .errors import BadLabel, BadSetting, TooLarge
from .operators import DEFAULT_DENSE_LIMIT, ClassTag
from .state import PureState, apply_local

logger = logging.getLogger("concurrence")

RestartCallback = Callable[[int, float], None]


@lru_cache(maxsize=None)
def hermitian_basis(n: int) -> np.ndarray:
    """
    Standard basis of n x n Hermitian matrices, shape (n^2, n, n): the diagonal
    units, then E_kl + E_lk and i (E_kl - E_lk) for every k < l.
    """
    basis = []
    for k in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, k] = 1
        basis.append(e)
    for k, l in combinations(range(n), 2):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, l] = e[l, k] = 1
        basis.append(e)
    for k, l in combinations(range(n), 2):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, l] = 1j
        e[l, k] = -1j
        basis.append(e)
    basis = np.array(basis)
    basis.setflags(write=False)
    return basis


def unitary(theta: np.ndarray) -> np.ndarray:
    """expm(i H(theta)) for a parameter vector of length n^2."""
    n = int(round(np.sqrt(len(theta))))
    return expm(1j * np.tensordot(theta, hermitian_basis(n), axes=1))


class LocalUnitaryPoint:
    """
    Parameters of a product of local unitaries U_1 x ... x U_m.
    """

    def __init__(self, parameters: Sequence[np.ndarray]):
        self.parameters = [np.array(theta, dtype=float) for theta in parameters]

    @staticmethod
    def identity(dims: Sequence[int]) -> "LocalUnitaryPoint":
        return LocalUnitaryPoint([np.zeros(n * n) for n in dims])

    @property
    def dims(self):
        return tuple(int(round(np.sqrt(len(theta)))) for theta in self.parameters)

    def unitaries(self) -> List[np.ndarray]:
        return [unitary(theta) for theta in self.parameters]

    def unitarity_residual(self) -> float:
        return max(
            float(np.max(np.abs(u @ u.conj().T - np.eye(len(u)))))
            for u in self.unitaries()
        )

    def apply(self, state: PureState) -> PureState:
        return apply_local(state, self.unitaries())

    def to_dict(self) -> Dict:
        return {"parameters": [theta.tolist() for theta in self.parameters]}


def _real(name: str, value) -> float:
    if isinstance(value, bool):
        raise BadSetting(name, value, "a number")
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise BadSetting(name, value, "a number")
    if not np.isfinite(number):
        raise BadSetting(name, value, "finite")
    return number


def _positive(name: str, value) -> float:
    number = _real(name, value)
    if not number > 0:
        raise BadSetting(name, value, "positive")
    return number


def _at_least_one(name: str, value) -> int:
    number = _real(name, value)
    if not number.is_integer():
        raise BadSetting(name, value, "an integer")
    if number < 1:
        raise BadSetting(name, value, "at least 1")
    return int(number)


class OptimizerConfig:
    """
    Settings of the local-unitary search.
    """

    DEFAULT_RESTARTS = 20
    DEFAULT_MAX_ITERATIONS = 500
    DEFAULT_TOLERANCE = 1e-8
    DEFAULT_PATIENCE = 100
    DEFAULT_INITIAL_STEP = 0.5
    DEFAULT_FINAL_STEP = 1e-3
    DEFAULT_INIT_SCALE = np.pi
    DEFAULT_THRESHOLD = 1e-6

    KEYS = (
        "restarts",
        "max_iterations",
        "tolerance",
        "patience",
        "initial_step",
        "final_step",
        "init_scale",
        "threshold",
        "seed",
        "dense_limit",
    )

    @staticmethod
    def from_settings(settings: Dict) -> "OptimizerConfig":
        """
        Raises:
            BadSetting: if the block is not an object or has an unknown key
        """
        if not isinstance(settings, dict):
            raise BadSetting("optimizer", settings, "an object")
        settings = {k: v for k, v in settings.items() if k != "version"}
        unknown = sorted(set(settings) - set(OptimizerConfig.KEYS))
        if unknown:
            raise BadSetting(
                f"optimizer.{unknown[0]}",
                settings[unknown[0]],
                f"a known key ({', '.join(OptimizerConfig.KEYS)})",
            )
        return OptimizerConfig(**settings)

    def __init__(
        self,
        restarts: int = DEFAULT_RESTARTS,
        max_iterations: int = DEFAULT_MAX_ITERATIONS,
        tolerance: float = DEFAULT_TOLERANCE,
        patience: int = DEFAULT_PATIENCE,
        initial_step: float = DEFAULT_INITIAL_STEP,
        final_step: float = DEFAULT_FINAL_STEP,
        init_scale: float = DEFAULT_INIT_SCALE,
        threshold: float = DEFAULT_THRESHOLD,
        seed: Optional[int] = None,
        dense_limit: int = DEFAULT_DENSE_LIMIT,
    ):
        """
        Args:
            restarts (int, optional): number of restarts, the first one from the identity. Defaults to 20.
            max_iterations (int, optional): iterations per restart. Defaults to 500.
            tolerance (float, optional): improvement counted as progress. Defaults to 1e-8.
            patience (int, optional): stop a restart after this many iterations without progress. Defaults to 100.
            initial_step (float, optional): Gaussian step scale at the first iteration. Defaults to 0.5.
            final_step (float, optional): Gaussian step scale at the last iteration. Defaults to 1e-3.
            init_scale (float, optional): spread of the random starting parameters. Defaults to pi.
            threshold (float, optional): genuineness threshold on the maximized value. Defaults to 1e-6.
            seed (int, optional): master seed; restart seeds are spawned from it.
            dense_limit (int, optional): largest state size accepted. Defaults to 4096.

        Raises:
            BadSetting: for values outside their range
        """
        self.restarts = _at_least_one("restarts", restarts)
        self.max_iterations = _at_least_one("max_iterations", max_iterations)
        self.patience = _at_least_one("patience", patience)
        self.dense_limit = _at_least_one("dense_limit", dense_limit)
        self.tolerance = _positive("tolerance", tolerance)
        self.initial_step = _positive("initial_step", initial_step)
        self.final_step = _positive("final_step", final_step)
        self.init_scale = _positive("init_scale", init_scale)
        self.threshold = _real("threshold", threshold)
        if self.threshold < 0:
            raise BadSetting("threshold", threshold, "non-negative")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            raise BadSetting("seed", seed, "an integer or null")
        self.seed = seed

    def step(self, iteration: int) -> float:
        """Gaussian step scale, geometric from initial_step to final_step."""
        fraction = iteration / max(1, self.max_iterations - 1)
        return self.initial_step * (self.final_step / self.initial_step) ** fraction

    def get_settings(self) -> Dict:
        return {
            "restarts": self.restarts,
            "max_iterations": self.max_iterations,
            "tolerance": self.tolerance,
            "patience": self.patience,
            "initial_step": self.initial_step,
            "final_step": self.final_step,
            "init_scale": self.init_scale,
            "threshold": self.threshold,
            "seed": self.seed,
            "dense_limit": self.dense_limit,
            "version": version,
        }


class OptimizationResult:
    """
    Attributes:
        value (float): best class value found
        point (LocalUnitaryPoint): where it was found
        trace (list of float): best value so far after each restart (nondecreasing)
        restart_values (list of float): best value of each restart on its own
        converged (bool): whether the best restart ran out of progress before
            its iteration budget
        baseline (float): class value of the input state
    """

    def __init__(
        self,
        tag: ClassTag,
        value: float,
        point: LocalUnitaryPoint,
        trace: List[float],
        restart_values: List[float],
        converged: bool,
        baseline: float,
    ):
        self.tag = tag
        self.value = value
        self.point = point
        self.trace = trace
        self.restart_values = restart_values
        self.converged = converged
        self.baseline = baseline

    def to_dict(self, include_point: bool = False) -> Dict:
        result = {
            "class": str(self.tag),
            "value": self.value,
            "baseline": self.baseline,
            "converged": self.converged,
            "trace": self.trace,
        }
        if include_point:
            result["point"] = self.point.to_dict()
        return result

    def __repr__(self) -> str:
        return f"OptimizationResult<{self.tag}={self.value}, converged={self.converged}>"


def _rotate(amplitudes: np.ndarray, unitaries: Sequence[np.ndarray]) -> np.ndarray:
    for axis, u in enumerate(unitaries):
        amplitudes = np.moveaxis(np.tensordot(u, amplitudes, axes=([1], [axis])), 0, axis)
    return amplitudes


def _ascend(
    amplitudes: np.ndarray,
    evaluate: Callable[[np.ndarray], float],
    start: LocalUnitaryPoint,
    config: OptimizerConfig,
    rng: np.random.Generator,
):
    """
    One restart. Returns (best value, best point, stopped before the budget).
    """
    parameters = [theta.copy() for theta in start.parameters]
    unitaries = [unitary(theta) for theta in parameters]
    best = evaluate(_rotate(amplitudes, unitaries))
    active = [j for j, theta in enumerate(parameters) if len(theta) > 1]
    if not active:
        return best, LocalUnitaryPoint(parameters), True

    stale = 0
    for iteration in range(config.max_iterations):
        j = active[iteration % len(active)]
        candidate = parameters[j] + rng.normal(0.0, config.step(iteration), len(parameters[j]))
        trial = list(unitaries)
        trial[j] = unitary(candidate)
        value = evaluate(_rotate(amplitudes, trial))

        stale = 0 if value - best > config.tolerance else stale + 1
        if value > best:
            best = value
            parameters[j] = candidate
            unitaries = trial
        if stale >= config.patience:
            return best, LocalUnitaryPoint(parameters), True
    return best, LocalUnitaryPoint(parameters), False


def maximize_class(
    state: PureState,
    tag: ClassTag,
    norm: Optional[NormalizationConvention] = None,
    config: Optional[OptimizerConfig] = None,
    callback: Optional[RestartCallback] = None,
) -> OptimizationResult:
    """
    Maximize a GHZ-class concurrence over products of local unitaries.

    Args:
        state (PureState): input state
        tag (ClassTag): GHZ_FULL or GHZ_REDUCED
        norm (NormalizationConvention, optional): defaults to the canonical convention
        config (OptimizerConfig, optional): search settings
        callback (callable, optional): called with (restart index, best value so far)
            after every restart

    Raises:
        BadLabel: for a class other than GHZ_FULL or GHZ_REDUCED
        TooLarge: if the state size exceeds the configured dense limit
    """
    if tag not in (ClassTag.GHZ_FULL, ClassTag.GHZ_REDUCED):
        raise BadLabel(f"Only the GHZ classes are maximized, got {tag}")
    config = config or OptimizerConfig()
    if state.size > config.dense_limit:
        raise TooLarge(state.size, config.dense_limit)

    evaluator = ClassEvaluator(state.dims, tag, norm)
    amplitudes = state.amplitudes
    baseline = evaluator.value(amplitudes)

    best_value = baseline
    best_point = LocalUnitaryPoint.identity(state.dims)
    converged = True
    trace: List[float] = []
    restart_values: List[float] = []

    for index, seed in enumerate(np.random.SeedSequence(config.seed).spawn(config.restarts)):
        rng = np.random.default_rng(seed)
        if index == 0:
            start = LocalUnitaryPoint.identity(state.dims)
        else:
            start = LocalUnitaryPoint(
                [rng.normal(0.0, config.init_scale, n * n) for n in state.dims]
            )
        value, point, stopped = _ascend(amplitudes, evaluator.value, start, config, rng)
        logger.debug(f"{tag} restart {index}: {value} (converged: {stopped})")

        restart_values.append(value)
        if value > best_value:
            best_value, best_point, converged = value, point, stopped
        elif index == 0:
            converged = stopped
        trace.append(best_value)
        if callback is not None:
            callback(index, best_value)

    if not converged:
        logger.warning(
            f"{tag} maximization did not converge within {config.max_iterations} iterations; "
            f"best value {best_value}"
        )
    return OptimizationResult(
        tag, best_value, best_point, trace, restart_values, converged, baseline
    )


def genuineness_verdict(value: float, threshold: float = OptimizerConfig.DEFAULT_THRESHOLD) -> bool:
    """True iff the maximized value exceeds the threshold; False is one-sided."""
    return value > threshold
