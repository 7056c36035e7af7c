"""Pseudo-Boolean benchmark objectives: OneMax, Jump, Cliff, LeadingOnes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstrings import BitString, onemax


@dataclass(frozen=True)
class Objective:
    """An integer-valued fitness function on bit strings of length n.

    Subclasses with om_determined = True depend on the input only through
    its number of one-bits and support vectorized evaluation over OneMax
    values; the engine exploits that for batch evaluation.
    """

    n: int

    om_determined = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def name(self) -> str:
        raise NotImplementedError

    @property
    def optimum_fitness(self) -> int:
        raise NotImplementedError

    def evaluate(self, x: BitString) -> int:
        raise NotImplementedError

    def is_optimum(self, x: BitString) -> bool:
        return self.evaluate(x) == self.optimum_fitness

    def fitness_of_onemax(self, om: np.ndarray) -> np.ndarray:
        """Fitness per OneMax value; only for om_determined objectives."""
        raise NotImplementedError

    def evaluate_batch(self, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
        """Fitness of each row of a (count, n) 0/1 matrix with row sums om."""
        raise NotImplementedError

    def _check_length(self, x: BitString) -> None:
        if x.n != self.n:
            raise ValueError(f"expected length {self.n}, got {x.n}")


@dataclass(frozen=True)
class OneMax(Objective):
    om_determined = True

    @property
    def name(self) -> str:
        return "onemax"

    @property
    def optimum_fitness(self) -> int:
        return self.n

    def evaluate(self, x: BitString) -> int:
        self._check_length(x)
        return onemax(x)

    def fitness_of_onemax(self, om: np.ndarray) -> np.ndarray:
        return np.asarray(om, dtype=np.int64)

    def evaluate_batch(self, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
        return self.fitness_of_onemax(om)


@dataclass(frozen=True)
class Jump(Objective):
    """OneMax with a fitness valley of width k just below the optimum.

    Points with n-k < OneMax < n form the gap and are ranked by n - OneMax,
    so the closer to the optimum, the worse. k = 1 reproduces the OneMax
    ranking with all values shifted by 1.
    """

    k: int

    om_determined = True

    def __post_init__(self):
        super().__post_init__()
        if not 1 <= self.k <= self.n:
            raise ValueError("k must lie in [1, n]")

    @property
    def name(self) -> str:
        return f"jump:k={self.k}"

    @property
    def optimum_fitness(self) -> int:
        return self.n + self.k

    def evaluate(self, x: BitString) -> int:
        self._check_length(x)
        om = onemax(x)
        if om <= self.n - self.k or om == self.n:
            return om + self.k
        return self.n - om

    def fitness_of_onemax(self, om: np.ndarray) -> np.ndarray:
        om = np.asarray(om, dtype=np.int64)
        outside = (om <= self.n - self.k) | (om == self.n)
        return np.where(outside, om + self.k, self.n - om)

    def evaluate_batch(self, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
        return self.fitness_of_onemax(om)


@dataclass(frozen=True)
class Cliff(Objective):
    """OneMax with a fitness drop of floor(n/3) at OneMax >= n - floor(n/3).

    Past the cliff the ranking still increases with OneMax, unlike the gap
    of Jump.
    """

    om_determined = True

    def __post_init__(self):
        super().__post_init__()
        if self.n < 3:
            raise ValueError("n must be at least 3")

    @property
    def name(self) -> str:
        return "cliff"

    @property
    def drop(self) -> int:
        return self.n // 3

    @property
    def optimum_fitness(self) -> int:
        return self.n - self.drop

    def evaluate(self, x: BitString) -> int:
        self._check_length(x)
        om = onemax(x)
        return om if om < self.n - self.drop else om - self.drop

    def fitness_of_onemax(self, om: np.ndarray) -> np.ndarray:
        om = np.asarray(om, dtype=np.int64)
        return np.where(om < self.n - self.drop, om, om - self.drop)

    def evaluate_batch(self, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
        return self.fitness_of_onemax(om)


@dataclass(frozen=True)
class LeadingOnes(Objective):
    """Length of the maximal all-ones prefix."""

    @property
    def name(self) -> str:
        return "leadingones"

    @property
    def optimum_fitness(self) -> int:
        return self.n

    def evaluate(self, x: BitString) -> int:
        self._check_length(x)
        return int(np.cumprod(x.bits).sum())

    def evaluate_batch(self, bits: np.ndarray, om: np.ndarray) -> np.ndarray:
        return np.cumprod(bits, axis=1, dtype=np.int64).sum(axis=1)


def jump(x: BitString, k: int) -> int:
    """Jump fitness of x with gap width k."""
    return Jump(x.n, k).evaluate(x)


def in_gap(x: BitString, k: int) -> bool:
    """Whether x lies in the gap region n - k < OneMax(x) < n."""
    if not 1 <= k <= x.n:
        raise ValueError("k must lie in [1, n]")
    om = onemax(x)
    return x.n - k < om < x.n


def cliff(x: BitString) -> int:
    """Cliff fitness of x."""
    return Cliff(x.n).evaluate(x)


def leadingones(x: BitString) -> int:
    """LeadingOnes fitness of x."""
    return LeadingOnes(x.n).evaluate(x)


FAMILIES = ("onemax", "jump", "cliff", "leadingones")


def parse_objective_id(spec: str) -> tuple[str, int | None]:
    """Split an objective id like "jump:k=3" into (family, k)."""
    name = spec.strip().lower()
    if ":" in name:
        family, _, tail = name.partition(":")
        key, _, value = tail.partition("=")
        if family != "jump" or key != "k":
            raise ValueError(f"unrecognized objective id {spec!r}")
        return family, int(value)
    if name not in FAMILIES:
        raise ValueError(f"unrecognized objective id {spec!r}")
    return name, None


def make_objective(spec: str, n: int, k: int | None = None) -> Objective:
    """Build the objective for an id such as "onemax" or "jump:k=2".

    The gap width of jump may come from the id or from the k argument,
    but not inconsistently from both.
    """
    family, id_k = parse_objective_id(spec)
    if id_k is not None:
        if k is not None and k != id_k:
            raise ValueError(f"conflicting gap widths {id_k} and {k}")
        k = id_k
    if family == "onemax":
        return OneMax(n)
    if family == "jump":
        if k is None:
            raise ValueError("jump requires a gap width k")
        return Jump(n, k)
    if family == "cliff":
        return Cliff(n)
    return LeadingOnes(n)
