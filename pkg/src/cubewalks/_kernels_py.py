"""Pure-Python batch kernels: the fallback backend and the reference the
numba kernels are checked against bit-for-bit.

States are plain Python ints (bit i set <=> coordinate i = +1). All kernels
take one derived seed per trial and report censored trials as value -1.
"""

from __future__ import annotations

import numpy as np

from .rng import GOLDEN, mix64

BACKEND_NAME = "python"

_MASK = (1 << 64) - 1
_HALF = 1 << 63


def _word(state: int) -> tuple[int, int]:
    state = (state + GOLDEN) & _MASK
    return state, mix64(state)


def _coord(state: int, n: int) -> tuple[int, int]:
    limit = ((1 << 64) // n) * n
    while True:
        state, u = _word(state)
        if u < limit:
            return state, u % n


def selfint_batch(seeds, n: int, cap: int):
    """Periodic walk first self-intersection; also flags 2-step returns."""
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    twostep = np.zeros(trials, dtype=np.uint8)
    start = (1 << n) - 1
    for i in range(trials):
        state = int(seeds[i])
        v = start
        seen = {v}
        prev = -1
        val = -1
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            v ^= 1 << j
            if v in seen:
                val = t
                twostep[i] = 1 if j == prev else 0
                break
            seen.add(v)
            prev = j
        values[i] = val
    return values, twostep


def gamma1_batch(seeds, n: int, cap: int):
    """First time two consecutive coordinate draws coincide."""
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        state = int(seeds[i])
        prev = -1
        val = -1
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            if j == prev:
                val = t
                break
            prev = j
        values[i] = val
    return values


def meeting_batch(seeds, n: int, cap: int):
    """Coupled lazy walks from all-plus/all-minus; first coincidence time."""
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    full = (1 << n) - 1
    for i in range(trials):
        state = int(seeds[i])
        a, b = full, 0
        val = -1
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            state, u = _word(state)
            bit = 1 << j
            if u < _HALF:
                a |= bit
                b |= bit
            else:
                a &= ~bit
                b &= ~bit
            if a == b:
                val = t
                break
        values[i] = val
    return values


def couple_distance_batch(seeds, n: int, cap: int):
    """Meeting times plus a per-step check that the coupled Hamming distance
    never increases; returns (values, violation count)."""
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    violations = 0
    full = (1 << n) - 1
    for i in range(trials):
        state = int(seeds[i])
        a, b = full, 0
        dist = n
        val = -1
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            state, u = _word(state)
            bit = 1 << j
            if u < _HALF:
                a |= bit
                b |= bit
            else:
                a &= ~bit
                b &= ~bit
            d = (a ^ b).bit_count()
            if d > dist:
                violations += 1
            dist = d
            if d == 0:
                val = t
                break
        values[i] = val
    return values, violations


def path_return_batch(seeds, n: int, m: int, cap: int, aperiodic: bool):
    """First return (t > m) of the walk to its own path states at 0..m."""
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    vsizes = np.empty(trials, dtype=np.int64)
    start = (1 << n) - 1
    for i in range(trials):
        state = int(seeds[i])
        v = start
        path = [v]
        for _ in range(m):
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                v = v | (1 << j) if u < _HALF else v & ~(1 << j)
            else:
                v ^= 1 << j
            path.append(v)
        members = set(path)
        vsizes[i] = len(members)
        t = m
        val = -1
        while t < cap:
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                v = v | (1 << j) if u < _HALF else v & ~(1 << j)
            else:
                v ^= 1 << j
            t += 1
            if v in members:
                val = t
                break
        values[i] = val
    return values, vsizes


def eta_visit_batch(seeds, n: int, m: int, cap: int, aperiodic: bool, eta_bits: int):
    """First visit to V of the eta-started walk, coupled with the V-walk.

    Value -2 marks a precondition violation (eta realized inside V).
    """
    trials = len(seeds)
    values = np.empty(trials, dtype=np.int64)
    start = (1 << n) - 1
    for i in range(trials):
        state = int(seeds[i])
        a, b = start, eta_bits
        path = [a]
        eta_path = [b]
        for _ in range(m):
            state, j = _coord(state, n)
            bit = 1 << j
            if aperiodic:
                state, u = _word(state)
                if u < _HALF:
                    a |= bit
                    b |= bit
                else:
                    a &= ~bit
                    b &= ~bit
            else:
                a ^= bit
                b ^= bit
            path.append(a)
            eta_path.append(b)
        members = set(path)
        if eta_bits in members:
            values[i] = -2
            continue
        val = -1
        for t in range(1, m + 1):
            if eta_path[t] in members:
                val = t
                break
        t = m
        while val < 0 and t < cap:
            state, j = _coord(state, n)
            bit = 1 << j
            if aperiodic:
                state, u = _word(state)
                b = b | bit if u < _HALF else b & ~bit
            else:
                b ^= bit
            t += 1
            if b in members:
                val = t
        values[i] = val
    return values
