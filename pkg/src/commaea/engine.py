"""Population engine for comma and plus selection with standard bit mutation.

One iteration generates lambda offspring, each by standard bit mutation of a
parent chosen uniformly with replacement, evaluates them in offspring index
order, and keeps the mu best of the selection pool. Comma selection pools the
offspring only; plus selection pools offspring and parents, offspring listed
first so that the stable-order tie policy admits offspring on equal fitness.

Evaluations are indexed globally: the mu initial individuals occupy indices
1..mu and iteration t occupies mu+(t-1)*lambda+1 .. mu+t*lambda. A run stops
at the first evaluation of an optimum (its index is reported as evaluations)
or once the budget is exhausted (censored).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .benchmarks import Cliff, Jump, Objective, OneMax
from .bitstrings import BitString
from .rng import RandomSource

SELECTIONS = ("comma", "plus")
TIE_POLICIES = ("uniform-random", "stable-order")

DEFAULT_BUDGET = 100_000_000


@dataclass(frozen=True)
class EAConfig:
    """Parameters of a single run."""

    n: int
    mu: int
    lam: int
    selection: str
    mutation_rate: float | None = None  # None means 1/n
    tie_policy: str = "uniform-random"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    record_trajectory: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.mu < 1 or self.lam < 1:
            raise ValueError("mu and lambda must be positive")
        if self.selection not in SELECTIONS:
            raise ValueError(f"selection must be one of {SELECTIONS}")
        if self.selection == "comma" and self.mu > self.lam:
            raise ValueError("comma selection requires mu <= lambda")
        if self.mutation_rate is not None and not 0.0 < self.mutation_rate <= 1.0:
            raise ValueError("mutation rate must lie in (0, 1]")
        if self.tie_policy not in TIE_POLICIES:
            raise ValueError(f"tie policy must be one of {TIE_POLICIES}")
        if self.budget < 1:
            raise ValueError("budget must be positive")

    @property
    def rate(self) -> float:
        return 1.0 / self.n if self.mutation_rate is None else self.mutation_rate


@dataclass
class Population:
    """Bit rows with their fitness values; rows are individuals."""

    bits: np.ndarray
    fitness: np.ndarray

    @property
    def size(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]

    def onemax_values(self) -> np.ndarray:
        return self.bits.sum(axis=1, dtype=np.int64)

    def individuals(self) -> list[BitString]:
        return [BitString(row) for row in self.bits]


@dataclass(frozen=True)
class TrajectoryPoint:
    iteration: int
    best_fitness: int
    best_onemax: int


@dataclass
class RunResult:
    """Outcome of one run.

    evaluations is the global index of the first optimal evaluation, or the
    number of evaluations spent when censored. iterations counts generations
    in which at least one offspring was evaluated.
    """

    evaluations: int
    iterations: int
    censored: bool
    best_fitness_seen: int
    trajectory: list[TrajectoryPoint] | None = None


Observer = Callable[[int, Population, Optional[Population], int], None]


def select_best_indices(
    fitness: np.ndarray, mu: int, tie_policy: str, rng: np.random.Generator
) -> np.ndarray:
    """Indices of the mu best pool entries under the given tie policy.

    uniform-random breaks every tie uniformly; stable-order prefers entries
    listed earlier in the pool.
    """
    if tie_policy not in TIE_POLICIES:
        raise ValueError(f"tie policy must be one of {TIE_POLICIES}")
    size = fitness.shape[0]
    if not 1 <= mu <= size:
        raise ValueError("mu must lie in [1, pool size]")
    if tie_policy == "uniform-random":
        perm = rng.permutation(size)
        order = perm[np.argsort(-fitness[perm], kind="stable")]
    else:
        order = np.argsort(-fitness, kind="stable")
    return order[:mu]


def select_best(
    pool: Population, mu: int, tie_policy: str, rng: np.random.Generator
) -> Population:
    """The mu best individuals of the pool as a new population."""
    idx = select_best_indices(pool.fitness, mu, tie_policy, rng)
    return Population(pool.bits[idx].copy(), pool.fitness[idx].copy())


def _evaluate_rows(objective: Objective, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
    """Batch fitness where available, otherwise row-by-row evaluate calls."""
    try:
        return np.asarray(objective.evaluate_batch(bits, om), dtype=np.int64)
    except NotImplementedError:
        return np.fromiter(
            (objective.evaluate(BitString(row)) for row in bits), dtype=np.int64, count=len(bits)
        )


def _scan_ordered(
    objective: Objective, bits: np.ndarray, om: np.ndarray, allowed: int, optimum: int
) -> tuple[np.ndarray, int | None]:
    """Fitness of the first allowed rows and the index of the first optimum.

    Objectives without batch support are evaluated strictly in order with an
    early stop, so the number of evaluate calls equals the number of counted
    evaluations exactly.
    """
    try:
        fits = np.asarray(objective.evaluate_batch(bits[:allowed], om[:allowed]), dtype=np.int64)
        hits = np.flatnonzero(fits == optimum)
        return fits, (int(hits[0]) if hits.size else None)
    except NotImplementedError:
        values = np.empty(allowed, dtype=np.int64)
        for i in range(allowed):
            values[i] = objective.evaluate(BitString(bits[i]))
            if values[i] == optimum:
                return values[: i + 1], i
        return values, None


def run(config: EAConfig, objective: Objective, observer: Observer | None = None) -> RunResult:
    """Execute one run of the configured EA on the objective."""
    if objective.n != config.n:
        raise ValueError("objective length does not match config.n")
    if _kernel_eligible(config, objective, observer):
        from .kernels import run_single_fast

        return run_single_fast(config, objective)
    return _run_vectorized(config, objective, observer)


# Objective types with a jitted single-individual fast path.
KERNEL_OBJECTIVES = (OneMax, Jump, Cliff)


def _kernel_eligible(config: EAConfig, objective: Objective, observer) -> bool:
    return (
        config.mu == 1
        and config.lam == 1
        and observer is None
        and not config.record_trajectory
        and type(objective) in KERNEL_OBJECTIVES
    )


def _run_vectorized(
    config: EAConfig, objective: Objective, observer: Observer | None
) -> RunResult:
    rng = RandomSource(config.seed).generator
    n, mu, lam = config.n, config.mu, config.lam
    rate = config.rate
    budget = config.budget
    optimum = objective.optimum_fitness

    trajectory: list[TrajectoryPoint] | None = [] if config.record_trajectory else None

    bits = (rng.random((mu, n)) < 0.5).view(np.uint8)
    om = bits.sum(axis=1, dtype=np.int64)
    allowed = min(mu, budget)
    fits, hit = _scan_ordered(objective, bits, om, allowed, optimum)
    if hit is not None:
        best = int(fits[: hit + 1].max())
        return RunResult(hit + 1, 0, False, best, trajectory)
    best = int(fits.max())
    if allowed < mu:
        return RunResult(allowed, 0, True, best, trajectory)

    parents = Population(bits, fits)
    evaluations = mu
    if trajectory is not None:
        trajectory.append(_trajectory_point(0, parents))
    if observer is not None:
        observer(0, parents, None, evaluations)

    iteration = 0
    while evaluations < budget:
        iteration += 1
        parent_idx = rng.integers(0, mu, size=lam)
        masks = rng.random((lam, n)) < rate
        child_bits = parents.bits[parent_idx] ^ masks.view(np.uint8)
        child_om = child_bits.sum(axis=1, dtype=np.int64)
        allowed = min(lam, budget - evaluations)
        child_fits, hit = _scan_ordered(objective, child_bits, child_om, allowed, optimum)
        if hit is not None:
            best = max(best, int(child_fits[: hit + 1].max()))
            return RunResult(evaluations + hit + 1, iteration, False, best, trajectory)
        evaluations += allowed
        best = max(best, int(child_fits.max()))
        if allowed < lam:
            return RunResult(evaluations, iteration, True, best, trajectory)

        offspring = Population(child_bits, child_fits)
        if config.selection == "comma":
            pool = offspring
        else:
            pool = Population(
                np.concatenate([offspring.bits, parents.bits]),
                np.concatenate([offspring.fitness, parents.fitness]),
            )
        keep = select_best_indices(pool.fitness, mu, config.tie_policy, rng)
        parents = Population(pool.bits[keep], pool.fitness[keep])
        if trajectory is not None:
            trajectory.append(_trajectory_point(iteration, parents))
        if observer is not None:
            observer(iteration, parents, offspring, evaluations)

    return RunResult(evaluations, iteration, True, best, trajectory)


def _trajectory_point(iteration: int, parents: Population) -> TrajectoryPoint:
    return TrajectoryPoint(
        iteration,
        int(parents.fitness.max()),
        int(parents.onemax_values().max()),
    )
