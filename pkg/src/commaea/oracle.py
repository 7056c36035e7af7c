"""Exact expected runtimes for single-individual runs on small instances.

For mu = lambda = 1 with plus selection, equal fitness accepted, and an
objective that depends only on the OneMax value, the OneMax level of the
current individual is a Markov chain on [0..n]. Solving the associated
linear system gives the exact expected number of evaluations to the first
optimal evaluation, counting the initial evaluation and one per iteration.
"""

from __future__ import annotations

import math

import numpy as np

from .benchmarks import Objective

MAX_EXACT_N = 14


def onemax_transition_matrix(n: int, rate: float | None = None) -> np.ndarray:
    """P[OneMax(offspring) = j | OneMax(parent) = i] under standard bit
    mutation, as an (n+1, n+1) row-stochastic matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    rate = 1.0 / n if rate is None else float(rate)
    if not 0.0 < rate <= 1.0:
        raise ValueError("mutation rate must lie in (0, 1]")
    matrix = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(n + 1):
            # b one-bits flip down, j - i + b zero-bits flip up
            total = 0.0
            for b in range(0, i + 1):
                a = j - i + b
                if a < 0 or a > n - i:
                    continue
                flips = a + b
                total += (
                    math.comb(i, b)
                    * math.comb(n - i, a)
                    * rate**flips
                    * (1.0 - rate) ** (n - flips)
                )
            matrix[i, j] = total
    return matrix


def exact_hitting_time(objective: Objective, rate: float | None = None) -> float:
    """Exact expected evaluations of the single-individual plus-selection
    process on an OneMax-determined objective with n <= 14."""
    if not objective.om_determined:
        raise ValueError("objective must depend only on the OneMax value")
    n = objective.n
    if n > MAX_EXACT_N:
        raise ValueError(f"exact solve supported for n <= {MAX_EXACT_N}")
    fitness = np.asarray(objective.fitness_of_onemax(np.arange(n + 1)), dtype=np.int64)
    optimal = fitness == objective.optimum_fitness
    if not optimal.any():
        raise ValueError("no optimal OneMax level")
    kernel = onemax_transition_matrix(n, rate)
    states = np.flatnonzero(~optimal)
    index = {int(s): pos for pos, s in enumerate(states)}
    hop = np.zeros((states.size, states.size))
    for pos, i in enumerate(states):
        for j in range(n + 1):
            if optimal[j]:
                continue  # evaluating an optimum ends the run
            target = j if fitness[j] >= fitness[i] else i
            hop[pos, index[int(target)]] += kernel[i, j]
    expected = np.linalg.solve(np.eye(states.size) - hop, np.ones(states.size))
    init = np.array([math.comb(n, i) for i in range(n + 1)], dtype=float) / 2.0**n
    return float(1.0 + init[states] @ expected)
