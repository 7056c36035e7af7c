"""Jitted single-individual EA loop for high-volume (1+1) style runs.

Implements the same process as the vectorized engine for mu = lambda = 1 on
objectives whose fitness depends only on the OneMax value, with mutation
sampled as a binomial flip count followed by distinct positions. Random
streams differ from the vectorized path, the offspring distribution does not.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .benchmarks import Cliff, Jump, Objective, OneMax
from .engine import EAConfig, RunResult
from .rng import RandomSource

_ONEMAX, _JUMP, _CLIFF = 0, 1, 2


def _objective_code(objective: Objective) -> tuple[int, int]:
    kind = type(objective)
    if kind is OneMax:
        return _ONEMAX, 0
    if kind is Jump:
        return _JUMP, objective.k
    if kind is Cliff:
        return _CLIFF, 0
    raise ValueError(f"no kernel for objective {objective!r}")


@njit(cache=True)
def _level_fitness(code, n, k, om):
    if code == _ONEMAX:
        return om
    if code == _JUMP:
        if om <= n - k or om == n:
            return om + k
        return n - om
    drop = n // 3
    if om < n - drop:
        return om
    return om - drop


@njit(cache=True)
def _single(rng, n, code, k, rate, budget, plus, uniform_tie, positions, bits):
    om = 0
    for i in range(n):
        if rng.random() < 0.5:
            bits[i] = 1
            om += 1
        else:
            bits[i] = 0
    fit = _level_fitness(code, n, k, om)
    opt = _level_fitness(code, n, k, n)
    best = fit
    evals = 1
    if fit == opt:
        return evals, 0, False, best
    t = 0
    while evals < budget:
        t += 1
        flips = rng.binomial(n, rate)
        evals += 1
        if flips == 0:
            # offspring equals parent: an equal-fitness tie that cannot
            # change the state under either policy
            continue
        m = 0
        delta = 0
        while m < flips:
            p = rng.integers(0, n)
            dup = False
            for j in range(m):
                if positions[j] == p:
                    dup = True
                    break
            if not dup:
                positions[m] = p
                m += 1
        for j in range(flips):
            p = positions[j]
            if bits[p]:
                bits[p] = 0
                delta -= 1
            else:
                bits[p] = 1
                delta += 1
        child_om = om + delta
        child_fit = _level_fitness(code, n, k, child_om)
        if child_fit > best:
            best = child_fit
        if child_fit == opt:
            return evals, t, False, best
        if not plus:
            accept = True
        elif child_fit > fit:
            accept = True
        elif child_fit == fit:
            accept = rng.random() < 0.5 if uniform_tie else True
        else:
            accept = False
        if accept:
            om = child_om
            fit = child_fit
        else:
            for j in range(flips):
                bits[positions[j]] ^= 1
    return evals, t, True, best


@njit(cache=True)
def _many(rng, trials, n, code, k, rate, budget, plus, uniform_tie,
          out_evals, out_iters, out_censored, out_best):
    positions = np.empty(n, np.int64)
    bits = np.empty(n, np.uint8)
    for i in range(trials):
        e, t, c, b = _single(rng, n, code, k, rate, budget, plus, uniform_tie,
                             positions, bits)
        out_evals[i] = e
        out_iters[i] = t
        out_censored[i] = c
        out_best[i] = b


def run_single_fast(config: EAConfig, objective: Objective) -> RunResult:
    """RunResult for a mu = lambda = 1 config via the jitted loop."""
    if config.mu != 1 or config.lam != 1:
        raise ValueError("fast path requires mu = lambda = 1")
    code, k = _objective_code(objective)
    rng = RandomSource(config.seed).generator
    positions = np.empty(config.n, np.int64)
    bits = np.empty(config.n, np.uint8)
    e, t, c, b = _single(
        rng, config.n, code, k, config.rate, config.budget,
        config.selection == "plus", config.tie_policy == "uniform-random",
        positions, bits,
    )
    return RunResult(int(e), int(t), bool(c), int(b), None)


@dataclass
class RuntimeSample:
    """Per-trial outcomes of a batched Monte Carlo runtime sample."""

    evaluations: np.ndarray
    iterations: np.ndarray
    censored: np.ndarray
    best_fitness: np.ndarray

    @property
    def trials(self) -> int:
        return self.evaluations.size


def sample_runtimes(
    config: EAConfig, objective: Objective, trials: int, rng: np.random.Generator
) -> RuntimeSample:
    """Batched runtimes of mu = lambda = 1 runs drawn from a single stream.

    All trials consume the passed generator in order, so the whole sample is
    a pure function of that generator's state; individual trials are not
    separately re-seedable. Intended for high-volume comparisons against
    exact expectations.
    """
    if config.mu != 1 or config.lam != 1:
        raise ValueError("batched sampling requires mu = lambda = 1")
    if objective.n != config.n:
        raise ValueError("objective length does not match config.n")
    if trials < 1:
        raise ValueError("trials must be positive")
    code, k = _objective_code(objective)
    evals = np.empty(trials, np.int64)
    iters = np.empty(trials, np.int64)
    censored = np.empty(trials, np.bool_)
    best = np.empty(trials, np.int64)
    _many(
        rng, trials, config.n, code, k, config.rate, config.budget,
        config.selection == "plus", config.tie_policy == "uniform-random",
        evals, iters, censored, best,
    )
    return RuntimeSample(evals, iters, censored, best)
