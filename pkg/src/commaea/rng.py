"""Seedable randomness with reproducible child-stream derivation."""

from __future__ import annotations

import numpy as np


class RandomSource:
    """A numpy Generator addressed by (master seed, stream path).

    Two sources built with the same seed and path produce identical streams,
    regardless of construction order or which worker builds them, so
    concurrent trials stay reproducible.
    """

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.path = tuple(int(p) for p in path)
        self.sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        self.generator = np.random.Generator(np.random.PCG64(self.sequence))

    def child(self, *indices: int) -> "RandomSource":
        """Derive the independent source at path + indices."""
        return RandomSource(self.seed, self.path + tuple(indices))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, path={self.path})"


def derived_seed(seed: int, *path: int) -> int:
    """Collapse (master seed, stream path) into a single 64-bit seed.

    Pure function of its arguments; used to give every trial its own
    loggable integer seed.
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return int(sequence.generate_state(1, np.uint64)[0])
