"""Potential-function instrumentation for comma selection near a fitness gap.

The gap level of an individual is how far its OneMax value reaches into the
gap: max(0, OneMax - (n - k)). A population's level is the maximum over its
members, and the potential g maps level L to min(n^L, g_max) with g(0) = 0,
where g_max = (1 - h(n, lambda)) / (lambda p_k). estimate_drift resamples
one-generation transitions from a frozen parent population to measure the
drift of g and the distribution of the next population level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .benchmarks import Jump, Objective
from .bitstrings import BitString
from .engine import EAConfig, Population
from .theory import comma_h, drift_potential_cap, p_k, saturation_level


@dataclass(frozen=True)
class PotentialParams:
    """Parameters of the gap potential for a (mu, lambda) comma process."""

    n: int
    k: int
    lam: int
    c: float
    C: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 2 <= self.k <= self.n:
            raise ValueError("k must lie in [2, n]")
        if self.lam < 2:
            raise ValueError("lambda must be at least 2")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.g_max > 0:
            # the potential never exceeds the top of its clamped range
            assert self.g_max <= float(self.n) ** self.k

    @property
    def c_prime(self) -> float:
        return 1.0 / math.e + self.c

    @property
    def h(self) -> float:
        return comma_h(self.n, self.lam, self.c)

    @property
    def jump_probability(self) -> float:
        return p_k(self.n, self.k).linear

    @property
    def g_max(self) -> float:
        return drift_potential_cap(self.n, self.k, self.lam, self.c)

    @property
    def k_star(self) -> int | None:
        return saturation_level(self.n, self.k, self.lam, self.c)


def individual_level(x: BitString, n: int, k: int) -> int:
    """Gap level max(0, OneMax(x) - (n - k)) in [0, k]."""
    if x.n != n:
        raise ValueError(f"expected length {n}, got {x.n}")
    if not 1 <= k <= n:
        raise ValueError("k must lie in [1, n]")
    return max(0, int(x.bits.sum()) - (n - k))


def levels_of_onemax(om: np.ndarray, n: int, k: int) -> np.ndarray:
    """Vectorized gap level per OneMax value."""
    return np.maximum(0, np.asarray(om, dtype=np.int64) - (n - k))


def population_level(population: Population, n: int, k: int) -> int:
    """Maximum gap level over the population."""
    return int(levels_of_onemax(population.onemax_values(), n, k).max())


def level_potential(level: int, params: PotentialParams) -> float:
    """g(level): 0 at level 0, else min(n^level, g_max)."""
    if params.g_max <= 0:
        raise ValueError("potential undefined: g_max is not positive")
    if not 0 <= level <= params.k:
        raise ValueError("level must lie in [0, k]")
    if level == 0:
        return 0.0
    return min(float(params.n) ** level, params.g_max)


def potential(population: Population, params: PotentialParams) -> float:
    """g of the population's gap level."""
    return level_potential(population_level(population, params.n, params.k), params)


def synthetic_population(
    objective: Objective, om_values: list[int], rng: np.random.Generator | None = None
) -> Population:
    """Population with prescribed OneMax values, one per entry.

    One-bit positions are uniform when a generator is given, else the
    leading prefix; either choice is equivalent under bit-symmetric
    objectives.
    """
    n = objective.n
    size = len(om_values)
    if size < 1:
        raise ValueError("need at least one individual")
    bits = np.zeros((size, n), dtype=np.uint8)
    for row, om in enumerate(om_values):
        if not 0 <= om <= n:
            raise ValueError("OneMax values must lie in [0, n]")
        if rng is None:
            bits[row, :om] = 1
        else:
            bits[row, rng.choice(n, size=om, replace=False)] = 1
    om = bits.sum(axis=1, dtype=np.int64)
    fitness = np.asarray(objective.evaluate_batch(bits, om), dtype=np.int64)
    return Population(bits, fitness)


@dataclass
class DriftEstimate:
    """Empirical one-generation drift of the gap potential."""

    samples: int
    start_level: int
    start_potential: float
    mean_gain: float
    sem_gain: float
    level_counts: np.ndarray

    def level_frequency(self, level: int) -> float:
        return float(self.level_counts[level]) / self.samples

    def frequency_sem(self, level: int) -> float:
        p = self.level_frequency(level)
        return math.sqrt(p * (1.0 - p) / self.samples)


def estimate_drift(
    population: Population,
    config: EAConfig,
    objective: Objective,
    params: PotentialParams,
    samples: int,
    rng: np.random.Generator,
    chunk: int = 512,
) -> DriftEstimate:
    """Resample one comma generation from a frozen population many times.

    Each sample draws lambda offspring (uniform parents, standard bit
    mutation), selects the mu best, and records the selected population's
    gap level and potential gain. Start populations at the potential
    ceiling are allowed; their gain is nonpositive by construction.
    """
    if config.selection != "comma":
        raise ValueError("drift estimation targets comma selection")
    if not isinstance(objective, Jump):
        raise ValueError("drift estimation targets gap landscapes")
    if (objective.n, objective.k) != (params.n, params.k):
        raise ValueError("objective does not match potential parameters")
    if config.n != params.n or config.lam != params.lam:
        raise ValueError("config does not match potential parameters")
    if population.size != config.mu:
        raise ValueError("population size must equal mu")
    if samples < 1:
        raise ValueError("samples must be positive")
    if np.any(population.fitness == objective.optimum_fitness):
        raise ValueError("start population must be optimum-free")
    if params.g_max <= 0:
        raise ValueError("potential undefined: g_max is not positive")

    n, k, mu, lam = params.n, params.k, config.mu, config.lam
    rate = config.rate
    start_level = population_level(population, n, k)
    start_potential = level_potential(start_level, params)
    g_of_level = np.array([level_potential(level, params) for level in range(k + 1)])

    level_counts = np.zeros(k + 1, dtype=np.int64)
    gains = np.empty(samples)
    done = 0
    while done < samples:
        batch = min(chunk, samples - done)
        parent_idx = rng.integers(0, mu, size=(batch, lam))
        masks = rng.random((batch, lam, n)) < rate
        children = population.bits[parent_idx] ^ masks.view(np.uint8)
        om = children.sum(axis=2, dtype=np.int64)
        fitness = objective.fitness_of_onemax(om)
        levels = levels_of_onemax(om, n, k)
        # the mu best per sample; equal jump fitness implies equal OneMax,
        # so tie handling cannot change the selected level set
        top = np.argsort(-fitness, axis=1, kind="stable")[:, :mu]
        next_level = np.take_along_axis(levels, top, axis=1).max(axis=1)
        level_counts += np.bincount(next_level, minlength=k + 1)
        gains[done : done + batch] = g_of_level[next_level] - start_potential
        done += batch

    mean = float(gains.mean())
    sem = float(gains.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return DriftEstimate(samples, start_level, start_potential, mean, sem, level_counts)
