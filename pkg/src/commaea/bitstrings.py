"""Fixed-length bit strings and standard bit mutation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class BitString:
    """Immutable 0/1 vector backed by a read-only uint8 array."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits, dtype=np.uint8, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("bits must form a non-empty 1-d array")
        if arr.max(initial=0) > 1:
            raise ValueError("bits must be 0 or 1")
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @property
    def n(self) -> int:
        return self.bits.size

    def __len__(self) -> int:
        return self.bits.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.bits.size == other.bits.size and bool(np.all(self.bits == other.bits))

    def __hash__(self) -> int:
        return hash((self.bits.size, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"BitString({''.join(map(str, self.bits))})"


def random_bitstring(n: int, rng: np.random.Generator) -> BitString:
    """Uniform random bit string of length n, each bit independent."""
    if n < 1:
        raise ValueError("n must be positive")
    return BitString((rng.random(n) < 0.5))


def onemax(x: BitString) -> int:
    """Number of one-bits."""
    return int(x.bits.sum())


def _check_rate(rate: float) -> float:
    rate = float(rate)
    if not 0.0 <= rate <= 1.0:
        raise ValueError("mutation rate must lie in [0, 1]")
    return rate


def mutate(x: BitString, rate: float, rng: np.random.Generator) -> BitString:
    """Flip each bit independently with probability rate.

    Reference sampler; mutate_fast draws from the identical distribution.
    """
    rate = _check_rate(rate)
    mask = rng.random(x.n) < rate
    return BitString(x.bits ^ mask.view(np.uint8))


def mutate_fast(x: BitString, rate: float, rng: np.random.Generator) -> BitString:
    """Draw a flip count K ~ Bin(n, rate), then flip K distinct uniform positions.

    Induces exactly the offspring distribution of mutate while sampling
    O(K) positions instead of n Bernoulli variables.
    """
    rate = _check_rate(rate)
    flips = int(rng.binomial(x.n, rate))
    if flips == 0:
        return BitString(x.bits)
    positions = rng.choice(x.n, size=flips, replace=False)
    bits = np.array(x.bits, copy=True)
    bits[positions] ^= 1
    return BitString(bits)
