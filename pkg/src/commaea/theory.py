"""Closed-form runtime bounds and probability tools for jump-type landscapes.

Every bound calculator reports its validity predicate item by item instead of
clamping or refusing: the value is computed whenever the arithmetic allows,
and callers decide what an inapplicable bound means. Exponentials and
binomial coefficients go through log space; sums use compensated summation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

_DBL_MIN = sys.float_info.min


@dataclass(frozen=True)
class BoundReport:
    """A bound value plus the itemized validity predicate behind it."""

    formula_id: str
    value: float
    preconditions_satisfied: bool
    precondition_details: tuple[tuple[str, bool], ...]
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "value": _json_number(self.value),
            "preconditions_satisfied": self.preconditions_satisfied,
            "precondition_details": [list(item) for item in self.precondition_details],
            "info": {key: _json_number(val) for key, val in self.info.items()},
        }


def _json_number(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _report(formula_id, value, checks, info) -> BoundReport:
    return BoundReport(
        formula_id=formula_id,
        value=float(value),
        preconditions_satisfied=all(ok for _, ok in checks),
        precondition_details=tuple((name, bool(ok)) for name, ok in checks),
        info=info,
    )


@dataclass(frozen=True)
class LogProbability:
    """A probability carried in log space next to its linear value.

    underflow marks a linear value that lost precision to subnormal range
    or flushed to zero although the log value is finite.
    """

    log: float
    linear: float
    underflow: bool


def p_k(n: int, k: int) -> LogProbability:
    """Probability that standard bit mutation flips exactly a prescribed
    set of k bits and nothing else: (1 - 1/n)^(n-k) * n^(-k)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= k <= n:
        raise ValueError("k must lie in [1, n]")
    log_value = (n - k) * math.log1p(-1.0 / n) - k * math.log(n)
    linear = math.exp(log_value)
    return LogProbability(log_value, linear, linear < _DBL_MIN)


def _log_p_k(n: int, k: float) -> float:
    # real-valued k appears when a bound is evaluated at a clamped gap width
    return (n - k) * math.log1p(-1.0 / n) - k * math.log(n)


def _inv_p_k(n: int, k: float) -> float:
    # exp overflow intentionally becomes the +inf sentinel
    try:
        return math.exp(-_log_p_k(n, k))
    except OverflowError:
        return math.inf


def plus_ea_lower_bound(n: int, k: int, mu: int) -> BoundReport:
    """Expected-runtime lower bound for plus selection on a width-k gap.

    (1 - 1/n) * (mu + 1/p_k) for moderate k; for k beyond n/2 - sqrt(2n
    log(mu n)) the bound is evaluated at that clamped width instead.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 2 <= k <= n:
        raise ValueError("k must lie in [2, n]")
    if mu < 1:
        raise ValueError("mu must be positive")
    h_n = math.sqrt(2.0 * n * math.log(mu * n))
    direct = k <= n / 2.0 - h_n
    k_eff = float(k) if direct else n / 2.0 - h_n
    inv_p = _inv_p_k(n, k_eff)
    value = (1.0 - 1.0 / n) * (mu + inv_p)
    info = {
        "branch": "direct" if direct else "clamped",
        "k_effective": k_eff,
        "h_n": h_n,
        "log_inv_p": -_log_p_k(n, k_eff),
    }
    return _report("plus-lower", value, [], info)


def plus_ea_upper_leading_term(
    n: int, k: int, mu: int, lam: int, side_condition_threshold: float = 0.01
) -> BoundReport:
    """Leading term 1/p_k of the plus-selection runtime upper bound.

    The non-leading part of the bound is order-only and not evaluated. The
    asymptotic side condition lambda = o(1/(n p_k)) is encoded as the
    finite-n check lambda * n * p_k <= side_condition_threshold.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 2 <= k <= n:
        raise ValueError("k must lie in [2, n]")
    if mu < 1 or lam < 1:
        raise ValueError("mu and lambda must be positive")
    if side_condition_threshold <= 0:
        raise ValueError("side condition threshold must be positive")
    pk = p_k(n, k)
    side_value = lam * n * pk.linear
    checks = [
        ("mu <= lambda", mu <= lam),
        ("lambda <= 10^n", math.log10(lam) <= n),
        (
            f"lambda * n * p_k <= {side_condition_threshold:g}",
            side_value <= side_condition_threshold,
        ),
    ]
    info = {
        "side_condition_value": side_value,
        "non_leading_terms": "order-only, not evaluated",
        "log_inv_p": -pk.log,
    }
    return _report("plus-upper-leading", _inv_p_k(n, k), checks, info)


def comma_h(n: int, lam: int, c: float) -> float:
    """The correction term h(n, lambda) of the comma-selection lower bound."""
    if n < 2:
        raise ValueError("n must be at least 2")
    c_prime = 1.0 / math.e + c
    return math.exp(-((1.0 - 2.0 * c_prime) ** 2) * lam / 2.0) + (2.0 * n - 1.0) / (n * n - n)


def comma_ea_lower_bound(
    n: int, k: int, mu: int, lam: int, c: float, C: float
) -> BoundReport:
    """Expected-runtime lower bound for comma selection on a width-k gap.

    (1 - exp(-0.16 n)) * (mu + (1 - h(n, lambda)) / p_k), evaluated at gap
    width min(k, floor(c n)). Reported as vacuous with value 0 when
    h(n, lambda) >= 1.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if mu < 1 or lam < 1:
        raise ValueError("mu and lambda must be positive")
    if c <= 0:
        raise ValueError("c must be positive")
    checks = [
        ("c <= 0.1", c <= 0.1),
        ("(4c)^(C/2) <= e^-2", (C / 2.0) * math.log(4.0 * c) <= -2.0),
        ("n >= 2/c", n >= 2.0 / c),
        ("C ln n <= lambda", C * math.log(n) <= lam),
        ("lambda <= (2/3) exp(0.16 n)", math.log(lam) <= math.log(2.0 / 3.0) + 0.16 * n),
        ("mu <= lambda/2", 2 * mu <= lam),
        ("2 <= k <= n", 2 <= k <= n),
    ]
    k_eff = min(float(k), float(math.floor(c * n)))
    h = comma_h(n, lam, c)
    vacuous = h >= 1.0
    if vacuous:
        value = 0.0
    else:
        value = (1.0 - math.exp(-0.16 * n)) * (mu + (1.0 - h) * _inv_p_k(n, k_eff))
    info = {
        "k_effective": k_eff,
        "c_prime": 1.0 / math.e + c,
        "h_n_lambda": h,
        "vacuous": vacuous,
        "inv_p_k_effective": _inv_p_k(n, k_eff),
    }
    return _report("comma-lower", value, checks, info)


def gap_width_parameters(n: int, k: int) -> tuple[float, float]:
    """The (c, C) pair with c = k/n and C = 4/ln(n/(4k)).

    At these values (4c)^(C/2) equals e^-2 exactly; requires n > 4k.
    """
    if not 1 <= k <= n:
        raise ValueError("k must lie in [1, n]")
    if n <= 4 * k:
        raise ValueError("requires n > 4k")
    return k / n, 4.0 / math.log(n / (4.0 * k))


def comma_ea_upper_bound(n: int, k: int, mu: int, lam: int, delta: float) -> BoundReport:
    """Expected-runtime upper bound for comma selection on a width-k gap.

    lambda / (1 - n^(-1/2)) * (8 t0 + 1 + 9 sqrt(t0/(p_k lambda))
    + 8 t0 / (p_k lambda floor(n^(3/2))) + 1/(p_k lambda)) with t0 the
    level-time budget below. The required least multiple of ln n in lambda
    is not quantified by the derivation, so the implied factor lambda/ln n
    is reported and the persistence requirement exp(-(delta/(1+delta))^2
    * lambda / (2 e^2)) <= n^-2 is checked directly in its place.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if mu < 1 or lam < 1:
        raise ValueError("mu and lambda must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    m = n + 1
    gamma0_lam = math.floor(lam / ((1.0 + delta) * math.e))
    d0 = min(math.ceil(100.0 / delta), gamma0_lam)
    persistence = math.exp(-((delta / (1.0 + delta)) ** 2) * lam / (2.0 * math.e**2))
    checks = [
        ("0 < delta < 1", 0.0 < delta < 1.0),
        ("mu <= lambda/((1+delta)e)", mu <= lam / ((1.0 + delta) * math.e)),
        ("floor(lambda/((1+delta)e)) >= 2", gamma0_lam >= 2),
        ("exp(-(delta/(1+delta))^2 lambda/(2e^2)) <= n^-2", persistence <= n**-2.0),
        ("2 <= k <= n", 2 <= k <= n),
    ]
    pk_lam = math.exp(_log_p_k(n, min(k, n)) + math.log(lam))
    if gamma0_lam >= 1:
        t0 = (1e4 / delta) * (
            m
            + (math.e / (math.e - 1.0)) * n * math.log2(8.0 * math.e * d0)
            + 4.0 * math.e * n * math.log(n) / lam
        )
        inv = 1.0 / pk_lam if pk_lam >= _DBL_MIN else math.inf
        value = (lam / (1.0 - n**-0.5)) * math.fsum(
            [
                8.0 * t0,
                1.0,
                9.0 * math.sqrt(t0 * inv),
                8.0 * t0 * inv / math.floor(n**1.5),
                inv,
            ]
        )
        phase_length = min(math.ceil(math.sqrt(t0 * inv)), math.floor(n**1.5))
    else:
        t0 = math.inf
        value = math.inf
        phase_length = math.floor(n**1.5)
    info = {
        "t0": t0,
        "d0": d0,
        "gamma0_lambda": gamma0_lam,
        "m": m,
        "phase_length": phase_length,
        "persistence_bound": persistence,
        "implied_log_factor": lam / math.log(n),
    }
    return _report("comma-upper", value, checks, info)


def level_based_t0(
    m: int, ell: int, z: Sequence[float], delta: float, gamma0: float, lam: int
) -> BoundReport:
    """Evaluation bound 8 lambda t0(ell) of the level-based runtime theorem.

    t0(ell) = (1e4/delta) * (m + 1/(1-gamma0) * sum_{j<ell} max(0, log2(2
    gamma0 lambda / (1 + z_j lambda / D0))) + 1/lambda * sum_{j<ell} 1/z_j)
    with D0 = min(ceil(100/delta), gamma0 lambda). The population-size
    requirement lambda >= (338/(gamma0 delta)) ln(8 t0) is reported.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not 1 <= ell <= m - 1:
        raise ValueError("ell must lie in [1, m-1]")
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    if lam < 1:
        raise ValueError("lambda must be positive")
    if not 0.0 < gamma0 <= 1.0 / (1.0 + delta):
        raise ValueError("gamma0 must lie in (0, 1/(1+delta)]")
    z = np.asarray(z, dtype=float)
    if z.size < ell - 1:
        raise ValueError(f"need at least {ell - 1} upgrade probabilities")
    head = z[: ell - 1]
    if head.size and not (np.all(head > 0.0) and np.all(head <= 1.0)):
        raise ValueError("upgrade probabilities must lie in (0, 1]")
    gamma0_lam = gamma0 * lam
    if abs(gamma0_lam - round(gamma0_lam)) > 1e-9 or round(gamma0_lam) < 2:
        raise ValueError("gamma0 * lambda must be an integer >= 2")
    gamma0_lam = round(gamma0_lam)
    d0 = min(math.ceil(100.0 / delta), gamma0_lam)
    log_terms = [
        max(0.0, math.log2(2.0 * gamma0_lam / (1.0 + zj * lam / d0))) for zj in head
    ]
    t0 = (1e4 / delta) * math.fsum(
        [m, math.fsum(log_terms) / (1.0 - gamma0), math.fsum(1.0 / zj for zj in head) / lam]
    )
    g3_threshold = (338.0 / (gamma0 * delta)) * math.log(8.0 * t0)
    checks = [("lambda >= (338/(gamma0 delta)) ln(8 t0)", lam >= g3_threshold)]
    info = {
        "t0": t0,
        "d0": d0,
        "g3_threshold": g3_threshold,
        "levels": ell,
    }
    return _report("level-time", 8.0 * lam * t0, checks, info)


@dataclass(frozen=True)
class ZSchedule:
    """Per-level upgrade probabilities for a width-k gap landscape."""

    n: int
    k: int
    m: int
    values: np.ndarray
    inverse_sum: float
    harmonic_bound: float
    harmonic_ok: bool


def jump_z_schedule(n: int, k: int) -> ZSchedule:
    """Upgrade probabilities z_1..z_{m-2} used by the level-based bound.

    z_j = (n - j)/(4 e n) while j is a gap level (j < k) and
    (n - (j - k))/(4 e n) afterwards. The inverse sum is checked against
    4 e n ln n; the check holds whenever k < n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 2 <= k <= n:
        raise ValueError("k must lie in [2, n]")
    m = n + 1
    j = np.arange(1, m - 1)
    z = np.where(j <= k - 1, (n - j) / (4.0 * math.e * n), (n - (j - k)) / (4.0 * math.e * n))
    inverse_sum = math.fsum(1.0 / z)
    harmonic_bound = 4.0 * math.e * n * math.log(n)
    return ZSchedule(n, k, m, z, inverse_sum, harmonic_bound, inverse_sum <= harmonic_bound)


def binomial_tail_bound(n: int, k: int, p: float) -> float:
    """Union-style tail bound C(n, k) p^k on P[Bin(n, p) >= k].

    Returned uncapped; values above 1 carry no information beyond the
    trivial bound.
    """
    if n < 0 or not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if k == 0:
        return 1.0
    if p == 0.0:
        return 0.0
    return math.exp(math.log(math.comb(n, k)) + k * math.log(p))


def chernoff_additive_bound(n: int, deviation: float) -> float:
    """exp(-2 deviation^2 / n): tail bound for a sum of n [0, 1] variables
    exceeding its mean by deviation."""
    if n < 1:
        raise ValueError("n must be positive")
    if deviation < 0:
        raise ValueError("deviation must be nonnegative")
    return math.exp(-2.0 * deviation * deviation / n)


def additive_drift_lower_bound(x0: float, delta: float) -> float:
    """Expected hitting time lower bound x0/delta under per-step drift at
    most delta toward zero."""
    if x0 < 0:
        raise ValueError("x0 must be nonnegative")
    if delta <= 0:
        raise ValueError("delta must be positive")
    return x0 / delta


def equal_fitness_probability(n: int, om: int) -> tuple[float, float]:
    """(lower bound, exact value) of P[OneMax(offspring) = OneMax(parent)].

    The lower bound counts only zero flips and one-one swaps. The exact
    value sums over all swap counts j. For om >= 1 both are at least 1/e;
    at om = 0 that fails (the exact value is (1 - 1/n)^n), and the combined
    expression (1 - 1/n)^(n-1) >= 1/e is asserted instead.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= om < n:
        raise ValueError("om must lie in [0, n)")
    q = 1.0 - 1.0 / n
    lower = q**n + (om * (n - om) / (n * n)) * q ** (n - 2)
    exact = math.fsum(
        math.comb(n - om, j) * math.comb(om, j) * n ** (-2.0 * j) * q ** (n - 2 * j)
        for j in range(0, min(om, n - om) + 1)
    )
    inv_e = 1.0 / math.e
    if om >= 1:
        assert lower >= inv_e and exact >= inv_e
    else:
        assert q ** (n - 1) >= inv_e
    return lower, exact


def uniform_sampling_lower_bound(n: int, m_opt: int, mu: int, lam: int, first: int) -> BoundReport:
    """Runtime lower bound from the first evaluations being uniform samples.

    With m_opt optima, each of the first N <= mu + lambda evaluations hits
    an optimum with probability at most m_opt 2^-n, so with probability at
    least 1 - m_opt N 2^-n the runtime exceeds N and the expectation is at
    least (1 - m_opt N 2^-n)(N + 1). Reported as vacuous when that
    probability bound is not positive.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if m_opt < 1:
        raise ValueError("the number of optima must be positive")
    if mu < 1 or lam < 0:
        raise ValueError("mu must be positive and lambda nonnegative")
    if not 1 <= first <= mu + lam:
        raise ValueError("the evaluation count must lie in [1, mu + lambda]")
    miss = 1.0 - m_opt * first * math.ldexp(1.0, -n)
    vacuous = miss <= 0.0
    value = 0.0 if vacuous else miss * (first + 1.0)
    info = {"probability_bound": miss, "vacuous": vacuous}
    return _report("uniform-init-lower", value, [], info)


def drift_potential_cap(n: int, k: int, lam: int, c: float) -> float:
    """Ceiling g_max = (1 - h(n, lambda)) / (lambda p_k) of the gap
    potential; nonpositive when h(n, lambda) >= 1."""
    if not 2 <= k <= n:
        raise ValueError("k must lie in [2, n]")
    if lam < 1:
        raise ValueError("lambda must be positive")
    h = comma_h(n, lam, c)
    return (1.0 - h) * math.exp(-_log_p_k(n, k) - math.log(lam))


def saturation_level(n: int, k: int, lam: int, c: float) -> int | None:
    """Smallest level L in [1, k] with n^L >= g_max, or None if g_max <= 0."""
    cap = drift_potential_cap(n, k, lam, c)
    if cap <= 0.0:
        return None
    for level in range(1, k + 1):
        if n**level >= cap:
            return level
    return k


@dataclass(frozen=True)
class TheoremParams:
    """Shared parameter bundle with the derived symbols of the bound
    calculators exposed as properties."""

    n: int
    k: int
    mu: int
    lam: int
    c: float | None = None
    C: float | None = None
    delta: float | None = None
    gamma0: float | None = None
    epsilon: float | None = None

    def _require(self, name: str) -> float:
        value = getattr(self, name)
        if value is None:
            raise ValueError(f"parameter {name} is not set")
        return value

    @property
    def m(self) -> int:
        return self.n + 1

    @property
    def c_prime(self) -> float:
        return 1.0 / math.e + self._require("c")

    @property
    def h_comma(self) -> float:
        return comma_h(self.n, self.lam, self._require("c"))

    @property
    def h_plus(self) -> float:
        return math.sqrt(2.0 * self.n * math.log(self.mu * self.n))

    @property
    def k_prime(self) -> float:
        return self.n / 2.0 - self.h_plus

    @property
    def implied_log_factor(self) -> float:
        return self.lam / math.log(self.n)

    @property
    def gamma0_lambda(self) -> int:
        delta = self._require("delta")
        return math.floor(self.lam / ((1.0 + delta) * math.e))

    @property
    def d0(self) -> int:
        return min(math.ceil(100.0 / self._require("delta")), self.gamma0_lambda)

    @property
    def g_max(self) -> float:
        return drift_potential_cap(self.n, self.k, self.lam, self._require("c"))

    @property
    def k_star(self) -> int | None:
        return saturation_level(self.n, self.k, self.lam, self._require("c"))
