"""Deterministic randomness: a SplitMix64 stream with documented draw protocol.

Every trial derives its own stream from (master_seed, trial_index), so results
are independent of scheduling. The word stream for seed s is
mix64(s + (t+1)*GOLDEN) for t = 0, 1, 2, ... which makes it reproducible
bit-for-bit in the pure-Python path, the numba kernels and numpy
vectorization alike.
"""

from __future__ import annotations

import numpy as np

ALGORITHM_ID = "splitmix64-rej-v1"

_MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer (a 64-bit bijection)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_trial_seed(master: int, trial: int) -> int:
    """Derive the seed of trial `trial` from a master seed.

    mix64(master XOR (trial+1)*GOLDEN). Both the odd-constant multiplication
    and mix64 are bijections on 64-bit words, so for a fixed master the map
    is injective over all trial indices below 2**64 - 1.
    """
    return mix64(master ^ (((trial + 1) * GOLDEN) & _MASK))


def derive_trial_seeds(master: int, trials: int, offset: int = 0) -> np.ndarray:
    """Vectorized derive_trial_seed for trial indices offset..offset+trials-1."""
    idx = np.arange(offset + 1, offset + trials + 1, dtype=np.uint64)
    z = np.uint64(master & _MASK) ^ (idx * np.uint64(GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


class RngStream:
    """Single-owner SplitMix64 stream.

    Draw protocol: every draw consumes whole 64-bit words. A sign draw
    consumes exactly one word; a coordinate draw consumes one word per
    rejection round (almost always exactly one).
    """

    __slots__ = ("state",)

    algorithm_id = ALGORITHM_ID

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_word(self) -> int:
        self.state = (self.state + GOLDEN) & _MASK
        return mix64(self.state)

    def next_coordinate(self, n: int) -> int:
        """Uniform index in [0, n) by rejection from 64-bit words."""
        if n < 1:
            raise ValueError("dimension must be >= 1")
        limit = ((1 << 64) // n) * n
        while True:
            u = self.next_word()
            if u < limit:
                return u % n

    def next_sign(self) -> int:
        """Fair +1/-1 draw; +1 iff the uniform word is below one half."""
        return 1 if self.next_word() < (1 << 63) else -1
