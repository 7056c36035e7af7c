"""Tests for the exact absorbing-chain oracle over OneMax levels."""

import math
from fractions import Fraction

import numpy as np
import pytest

from commaea.benchmarks import Cliff, Jump, LeadingOnes, OneMax
from commaea.engine import EAConfig
from commaea.kernels import sample_runtimes
from commaea.oracle import MAX_EXACT_N, exact_hitting_time, onemax_transition_matrix
from commaea.rng import RandomSource


def exact_kernel_entry(n: int, i: int, j: int) -> Fraction:
    """Mutation kernel entry by direct summation in exact arithmetic."""
    r = Fraction(1, n)
    total = Fraction(0)
    for down in range(i + 1):
        up = j - i + down
        if 0 <= up <= n - i:
            total += (
                math.comb(i, down)
                * math.comb(n - i, up)
                * r ** (up + down)
                * (1 - r) ** (n - up - down)
            )
    return total


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination in Fraction arithmetic."""
    size = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [value * inv for value in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][size] for r in range(size)]


def test_transition_matrix_rows_sum_to_one():
    for n in range(1, 11):
        kernel = onemax_transition_matrix(n)
        assert np.allclose(kernel.sum(axis=1), 1.0, atol=1e-12)
        assert (kernel >= 0).all()


def test_transition_matrix_matches_exact_arithmetic():
    for n in (2, 3, 5):
        kernel = onemax_transition_matrix(n)
        for i in range(n + 1):
            for j in range(n + 1):
                assert kernel[i, j] == pytest.approx(
                    float(exact_kernel_entry(n, i, j)), rel=1e-12, abs=1e-15
                )


def test_single_bit_expected_runtime():
    assert exact_hitting_time(OneMax(1)) == pytest.approx(1.5, rel=1e-12)


def test_full_gap_three_bit_jump():
    """jump with n = k = 3 solved by hand: conditional expectations 27, 45/2,
    and 189/10 from OneMax levels 0..2 average to 199/10 evaluations."""
    assert exact_hitting_time(Jump(3, 3)) == pytest.approx(19.9, rel=1e-10)


def test_onemax_oracle_matches_exact_linear_solve():
    """Independent check: build the accept-equal chain in Fraction
    arithmetic and solve it exactly."""
    n = 4
    f = OneMax(n)
    states = list(range(n))  # level n is absorbing
    hop = [[Fraction(0)] * n for _ in range(n)]
    for i in states:
        for j in range(n + 1):
            prob = exact_kernel_entry(n, i, j)
            if j == n:
                continue  # evaluating the optimum ends the run
            target = j if j >= i else i
            hop[i][target] += prob
    identity = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    system = [
        [identity[r][c] - hop[r][c] for c in range(n)] for r in range(n)
    ]
    expected_from = solve_exact(system, [Fraction(1)] * n)
    init = [Fraction(math.comb(n, i), 2**n) for i in range(n + 1)]
    expected = 1 + sum(init[i] * expected_from[i] for i in states)
    assert exact_hitting_time(f) == pytest.approx(float(expected), rel=1e-12)


def test_jump_dominates_onemax():
    """A gap can only slow the single-parent process down."""
    for n in (6, 8, 10):
        base = exact_hitting_time(OneMax(n))
        for k in (2, 3):
            assert exact_hitting_time(Jump(n, k)) >= base


def test_oracle_agrees_with_sampled_runs():
    """Monte Carlo means on small instances fall inside the 99 percent CI
    around the exact value.

    The stable-order policy admits offspring on fitness ties, which is the
    accept-equal rule the oracle encodes. Cliff makes the distinction
    observable: distinct OneMax levels share fitness values there, so a
    coin-flip tie rule would genuinely slow the chain down.
    """
    trials = 40000
    cases = [(OneMax(6), 0), (Jump(6, 2), 1), (Cliff(6), 2)]
    for objective, stream in cases:
        exact = exact_hitting_time(objective)
        config = EAConfig(
            n=6, mu=1, lam=1, selection="plus", tie_policy="stable-order", seed=0
        )
        sample = sample_runtimes(config, objective, trials, RandomSource(500 + stream).generator)
        mean = sample.evaluations.mean()
        sem = sample.evaluations.std(ddof=1) / math.sqrt(trials)
        assert abs(mean - exact) <= 2.576 * sem


def test_oracle_rejects_unsupported_instances():
    with pytest.raises(ValueError):
        exact_hitting_time(OneMax(MAX_EXACT_N + 1))
    with pytest.raises(ValueError):
        exact_hitting_time(LeadingOnes(6))
    with pytest.raises(ValueError):
        onemax_transition_matrix(5, 0.0)
    exact_hitting_time(OneMax(MAX_EXACT_N))
