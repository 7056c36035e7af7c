"""Tests for the population engine: accounting, selection, determinism."""

import math
from dataclasses import dataclass, field

import numpy as np
import pytest

from commaea.benchmarks import Jump, Objective, OneMax
from commaea.bitstrings import BitString
from commaea.engine import EAConfig, Population, run, select_best, select_best_indices
from commaea.kernels import sample_runtimes
from commaea.rng import RandomSource


@dataclass(frozen=True)
class ScalarJump(Objective):
    """Jump without batch evaluation, forcing the ordered scalar path."""

    k: int = 2

    @property
    def optimum_fitness(self) -> int:
        return self.n + self.k

    def evaluate(self, x: BitString) -> int:
        om = int(x.bits.sum())
        if om <= self.n - self.k or om == self.n:
            return om + self.k
        return self.n - om


@dataclass(frozen=True)
class CountingOneMax(Objective):
    """OneMax that records every single evaluate call."""

    calls: list = field(default_factory=list)

    @property
    def optimum_fitness(self) -> int:
        return self.n

    def evaluate(self, x: BitString) -> int:
        self.calls.append(1)
        return int(x.bits.sum())


def test_config_validation():
    with pytest.raises(ValueError):
        EAConfig(n=0, mu=1, lam=1, selection="plus")
    with pytest.raises(ValueError):
        EAConfig(n=5, mu=3, lam=2, selection="comma")
    EAConfig(n=5, mu=3, lam=2, selection="plus")
    with pytest.raises(ValueError):
        EAConfig(n=5, mu=1, lam=1, selection="tournament")
    with pytest.raises(ValueError):
        EAConfig(n=5, mu=1, lam=1, selection="plus", mutation_rate=0.0)
    with pytest.raises(ValueError):
        EAConfig(n=5, mu=1, lam=1, selection="plus", budget=0)
    with pytest.raises(ValueError):
        EAConfig(n=5, mu=1, lam=1, selection="plus", tie_policy="fifo")
    assert EAConfig(n=4, mu=1, lam=1, selection="plus").rate == 0.25


def test_objective_length_must_match():
    config = EAConfig(n=5, mu=1, lam=1, selection="plus")
    with pytest.raises(ValueError):
        run(config, OneMax(6))


def test_single_bit_runs_take_one_or_two_evaluations():
    """With n=1 the run ends at the first evaluation iff the start is the
    optimum, else at the second; both engine paths agree on that."""
    from commaea.benchmarks import LeadingOnes

    seen = {1: 0, 2: 0}
    for seed in range(40):
        config = EAConfig(n=1, mu=1, lam=1, selection="plus", seed=seed)
        fast = run(config, OneMax(1))
        slow = run(config, LeadingOnes(1))
        assert not fast.censored and not slow.censored
        assert fast.evaluations in (1, 2)
        assert slow.evaluations in (1, 2)
        assert (fast.evaluations == 1) == (fast.iterations == 0)
        seen[slow.evaluations] += 1
    assert seen[1] > 0 and seen[2] > 0


def test_expected_runtime_single_bit():
    """E[evaluations] = 1.5 for the elitist single-parent EA on one bit."""
    config = EAConfig(n=1, mu=1, lam=1, selection="plus", seed=0)
    sample = sample_runtimes(config, OneMax(1), 100000, RandomSource(42).generator)
    mean = sample.evaluations.mean()
    sem = 0.5 / math.sqrt(sample.trials)
    assert abs(mean - 1.5) <= 3 * sem


def test_runtime_bracket():
    """First-optimum index lies in mu+(t-1)*lambda+1 .. mu+t*lambda."""
    mu, lam = 3, 5
    for seed in range(300):
        config = EAConfig(n=8, mu=mu, lam=lam, selection="plus", seed=seed, budget=10**5)
        result = run(config, OneMax(8))
        assert not result.censored
        t = result.iterations
        if t == 0:
            assert 1 <= result.evaluations <= mu
        else:
            assert mu + (t - 1) * lam + 1 <= result.evaluations <= mu + t * lam


def test_select_best_unambiguous_cut():
    fitness = np.array([5, 3, 5, 1])
    rng = RandomSource(0).generator
    for _ in range(20):
        idx = select_best_indices(fitness, 2, "uniform-random", rng)
        assert sorted(idx) == [0, 2]
    assert sorted(select_best_indices(fitness, 2, "stable-order", rng)) == [0, 2]


def test_select_best_uniform_tie_exclusion():
    """With fitnesses [4,4,4] and mu=2 each entry is excluded 1/3 of the time."""
    fitness = np.array([4, 4, 4])
    rng = RandomSource(1).generator
    calls = 30000
    excluded = np.zeros(3)
    for _ in range(calls):
        idx = select_best_indices(fitness, 2, "uniform-random", rng)
        excluded[[i for i in range(3) if i not in idx]] += 1
    sem = math.sqrt((1 / 3) * (2 / 3) / calls)
    for count in excluded:
        assert abs(count / calls - 1 / 3) <= 3 * sem


def test_select_best_stable_order_prefers_early_entries():
    fitness = np.array([4, 4, 4])
    rng = RandomSource(2).generator
    idx = select_best_indices(fitness, 2, "stable-order", rng)
    assert sorted(idx) == [0, 1]


def test_select_best_whole_pool():
    fitness = np.array([2, 9, 4])
    rng = RandomSource(3).generator
    assert sorted(select_best_indices(fitness, 3, "uniform-random", rng)) == [0, 1, 2]
    with pytest.raises(ValueError):
        select_best_indices(fitness, 4, "uniform-random", rng)


def test_select_best_returns_population_copy():
    pool = Population(np.eye(3, dtype=np.uint8), np.array([1, 1, 1]))
    rng = RandomSource(4).generator
    chosen = select_best(pool, 2, "stable-order", rng)
    assert chosen.size == 2
    chosen.bits[0, 0] ^= 1
    assert pool.bits[0, 0] == 1


def _sorted_rows(bits: np.ndarray) -> list[bytes]:
    return sorted(row.tobytes() for row in bits)


def test_comma_with_lambda_equal_mu_keeps_all_offspring():
    """lambda = mu comma selection passes the offspring through unchanged."""
    transcripts = []

    def observer(iteration, parents, offspring, evaluations):
        if offspring is not None:
            transcripts.append((parents.bits.copy(), offspring.bits.copy()))

    config = EAConfig(n=10, mu=4, lam=4, selection="comma", seed=5, budget=400)
    run(config, OneMax(10), observer)
    assert transcripts
    for parents, offspring in transcripts:
        assert _sorted_rows(parents) == _sorted_rows(offspring)


def test_plus_selection_is_elitist():
    best_series = []

    def observer(iteration, parents, offspring, evaluations):
        best_series.append(int(parents.fitness.max()))

    config = EAConfig(n=12, mu=3, lam=5, selection="plus", seed=6, budget=3000)
    run(config, Jump(12, 2), observer)
    assert len(best_series) > 2
    assert all(a <= b for a, b in zip(best_series, best_series[1:]))


def test_selection_pools():
    """Comma survivors come from the offspring; plus survivors from parents
    or offspring."""
    state = {"parents": None}
    comma_ok, plus_ok = [], []

    def check(selection, collected):
        def observer(iteration, parents, offspring, evaluations):
            if offspring is None:
                state["parents"] = parents.bits.copy()
                return
            allowed = set(row.tobytes() for row in offspring.bits)
            if selection == "plus":
                allowed |= set(row.tobytes() for row in state["parents"])
            collected.append(all(row.tobytes() in allowed for row in parents.bits))
            state["parents"] = parents.bits.copy()

        return observer

    for selection, collected in (("comma", comma_ok), ("plus", plus_ok)):
        config = EAConfig(n=10, mu=3, lam=6, selection=selection, seed=7, budget=600)
        run(config, OneMax(10), check(selection, collected))
    assert comma_ok and all(comma_ok)
    assert plus_ok and all(plus_ok)


def test_evaluation_count_is_exact():
    """The evaluations field equals the number of evaluate calls."""
    for seed in range(5):
        f = CountingOneMax(6)
        config = EAConfig(n=6, mu=2, lam=3, selection="comma", seed=seed, budget=5000)
        result = run(config, f)
        assert len(f.calls) == result.evaluations


def test_scalar_and_batch_paths_agree():
    """Row-by-row and batch evaluation yield identical runs under one seed."""
    for seed in range(10):
        config = EAConfig(n=8, mu=2, lam=4, selection="plus", seed=seed, budget=10**5)
        fast = run(config, Jump(8, 2))
        slow = run(config, ScalarJump(8, 2))
        assert (fast.evaluations, fast.iterations, fast.censored, fast.best_fitness_seen) == (
            slow.evaluations,
            slow.iterations,
            slow.censored,
            slow.best_fitness_seen,
        )


def test_same_seed_same_result():
    config = EAConfig(
        n=10, mu=4, lam=8, selection="comma", seed=11, budget=2000, record_trajectory=True
    )
    a = run(config, Jump(10, 2))
    b = run(config, Jump(10, 2))
    assert a.evaluations == b.evaluations
    assert a.iterations == b.iterations
    assert a.censored == b.censored
    assert a.best_fitness_seen == b.best_fitness_seen
    assert a.trajectory == b.trajectory
    fast_a = run(EAConfig(n=12, mu=1, lam=1, selection="plus", seed=12), Jump(12, 2))
    fast_b = run(EAConfig(n=12, mu=1, lam=1, selection="plus", seed=12), Jump(12, 2))
    assert fast_a == fast_b


def test_budget_censoring():
    config = EAConfig(n=30, mu=10, lam=10, selection="comma", seed=13, budget=500)
    result = run(config, OneMax(30))
    assert result.censored
    assert result.evaluations == 500
    assert result.best_fitness_seen < 30
    tiny = EAConfig(n=30, mu=10, lam=10, selection="comma", seed=13, budget=5)
    short = run(tiny, OneMax(30))
    assert short.censored and short.evaluations == 5 and short.iterations == 0


def test_trajectory_records_parent_summaries():
    config = EAConfig(
        n=10, mu=3, lam=5, selection="plus", seed=14, budget=400, record_trajectory=True
    )
    result = run(config, OneMax(10))
    assert result.trajectory is not None
    assert result.trajectory[0].iteration == 0
    for point in result.trajectory:
        assert 0 <= point.best_onemax <= 10
        assert point.best_fitness == point.best_onemax


def test_kernel_and_vectorized_distributions_agree():
    """The jitted single-parent path and the generic path sample the same
    runtime distribution."""
    trials = 2000
    fast = sample_runtimes(
        EAConfig(n=8, mu=1, lam=1, selection="plus", seed=0),
        OneMax(8),
        trials,
        RandomSource(20).generator,
    )
    slow = np.array(
        [
            run(
                EAConfig(n=8, mu=1, lam=1, selection="plus", seed=seed),
                OneMax(8),
                observer=lambda *args: None,
            ).evaluations
            for seed in range(trials)
        ]
    )
    sem = math.sqrt(fast.evaluations.var(ddof=1) / trials + slow.var(ddof=1) / trials)
    assert abs(fast.evaluations.mean() - slow.mean()) <= 4 * sem


def test_sample_runtimes_requires_single_parent():
    rng = RandomSource(0).generator
    with pytest.raises(ValueError):
        sample_runtimes(EAConfig(n=8, mu=2, lam=2, selection="plus", seed=0), OneMax(8), 5, rng)
