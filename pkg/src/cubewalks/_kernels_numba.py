"""Numba-accelerated batch kernels. Must match _kernels_py bit-for-bit.

States are four 64-bit words (dimension up to 256). The SplitMix64 stream,
rejection sampling and sign convention replicate rng.RngStream exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"

U64 = np.uint64
GOLDEN = U64(0x9E3779B97F4A7C15)
FULL64 = U64(0xFFFFFFFFFFFFFFFF)
HALF = U64(1) << U64(63)


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> U64(30))) * U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> U64(27))) * U64(0x94D049BB133111EB)
    return z ^ (z >> U64(31))


@njit(cache=True, inline="always")
def _word(state):
    state = state + GOLDEN
    return state, _mix(state)


@njit(cache=True, inline="always")
def _coord(state, n):
    nn = U64(n)
    # Largest acceptable word: multiple-of-n cutoff for unbiased rejection.
    top = FULL64 - ((FULL64 % nn + U64(1)) % nn)
    while True:
        state = state + GOLDEN
        u = _mix(state)
        if u <= top:
            return state, np.int64(u % nn)


@njit(cache=True, inline="always")
def _fill_plus(w, n):
    for k in range(4):
        w[k] = U64(0)
    full = n // 64
    for k in range(full):
        w[k] = FULL64
    rem = n - 64 * full
    if rem > 0:
        w[full] = (U64(1) << U64(rem)) - U64(1)


@njit(cache=True, inline="always")
def _flip(w, j):
    w[j >> 6] ^= U64(1) << U64(j & 63)


@njit(cache=True, inline="always")
def _setbit(w, j, plus):
    bit = U64(1) << U64(j & 63)
    if plus:
        w[j >> 6] |= bit
    else:
        w[j >> 6] &= ~bit


@njit(cache=True, inline="always")
def _eq(a, b):
    return a[0] == b[0] and a[1] == b[1] and a[2] == b[2] and a[3] == b[3]


@njit(cache=True, inline="always")
def _eq_row(rows, r, w):
    return (
        rows[r, 0] == w[0]
        and rows[r, 1] == w[1]
        and rows[r, 2] == w[2]
        and rows[r, 3] == w[3]
    )


@njit(cache=True, inline="always")
def _eq_rows(rows, r, other, s):
    return (
        rows[r, 0] == other[s, 0]
        and rows[r, 1] == other[s, 1]
        and rows[r, 2] == other[s, 2]
        and rows[r, 3] == other[s, 3]
    )


@njit(cache=True, inline="always")
def _pop64(x):
    x = x - ((x >> U64(1)) & U64(0x5555555555555555))
    x = (x & U64(0x3333333333333333)) + ((x >> U64(2)) & U64(0x3333333333333333))
    x = (x + (x >> U64(4))) & U64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * U64(0x0101010101010101)) >> U64(56))


@njit(cache=True, inline="always")
def _hash4(w):
    return _mix(w[0] ^ _mix(w[1] ^ _mix(w[2] ^ _mix(w[3] ^ U64(0x9E3779B9)))))


@njit(cache=True)
def selfint_batch(seeds, n, cap):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    twostep = np.zeros(trials, np.uint8)
    size = 1
    while size < 2 * (cap + 2):
        size <<= 1
    mask = U64(size - 1)
    # Open-addressing table shared across trials, invalidated by stamping.
    keys = np.zeros((size, 4), np.uint64)
    stamp = np.full(size, -1, np.int64)
    w = np.zeros(4, np.uint64)
    for i in range(trials):
        state = seeds[i]
        _fill_plus(w, n)
        slot = np.int64(_hash4(w) & mask)
        while stamp[slot] == i:
            slot = np.int64((U64(slot) + U64(1)) & mask)
        stamp[slot] = i
        for k in range(4):
            keys[slot, k] = w[k]
        prev = np.int64(-1)
        val = np.int64(-1)
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            _flip(w, j)
            slot = np.int64(_hash4(w) & mask)
            found = False
            while stamp[slot] == i:
                if _eq_row(keys, slot, w):
                    found = True
                    break
                slot = np.int64((U64(slot) + U64(1)) & mask)
            if found:
                val = t
                if j == prev:
                    twostep[i] = 1
                break
            stamp[slot] = i
            for k in range(4):
                keys[slot, k] = w[k]
            prev = j
        values[i] = val
    return values, twostep


@njit(cache=True)
def gamma1_batch(seeds, n, cap):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    for i in range(trials):
        state = seeds[i]
        prev = np.int64(-1)
        val = np.int64(-1)
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            if j == prev:
                val = t
                break
            prev = j
        values[i] = val
    return values


@njit(cache=True)
def meeting_batch(seeds, n, cap):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    a = np.zeros(4, np.uint64)
    b = np.zeros(4, np.uint64)
    for i in range(trials):
        state = seeds[i]
        _fill_plus(a, n)
        for k in range(4):
            b[k] = U64(0)
        val = np.int64(-1)
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            state, u = _word(state)
            plus = u < HALF
            _setbit(a, j, plus)
            _setbit(b, j, plus)
            if _eq(a, b):
                val = t
                break
        values[i] = val
    return values


@njit(cache=True)
def couple_distance_batch(seeds, n, cap):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    violations = np.int64(0)
    a = np.zeros(4, np.uint64)
    b = np.zeros(4, np.uint64)
    for i in range(trials):
        state = seeds[i]
        _fill_plus(a, n)
        for k in range(4):
            b[k] = U64(0)
        dist = np.int64(n)
        val = np.int64(-1)
        for t in range(1, cap + 1):
            state, j = _coord(state, n)
            state, u = _word(state)
            plus = u < HALF
            _setbit(a, j, plus)
            _setbit(b, j, plus)
            d = np.int64(0)
            for k in range(4):
                d += _pop64(a[k] ^ b[k])
            if d > dist:
                violations += 1
            dist = d
            if d == 0:
                val = t
                break
        values[i] = val
    return values, violations


@njit(cache=True)
def path_return_batch(seeds, n, m, cap, aperiodic):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    vsizes = np.empty(trials, np.int64)
    path = np.zeros((m + 1, 4), np.uint64)
    w = np.zeros(4, np.uint64)
    for i in range(trials):
        state = seeds[i]
        _fill_plus(w, n)
        for k in range(4):
            path[0, k] = w[k]
        for t in range(1, m + 1):
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                _setbit(w, j, u < HALF)
            else:
                _flip(w, j)
            for k in range(4):
                path[t, k] = w[k]
        vsize = np.int64(0)
        for r in range(m + 1):
            fresh = True
            for s in range(r):
                if _eq_rows(path, s, path, r):
                    fresh = False
                    break
            if fresh:
                vsize += 1
        vsizes[i] = vsize
        t = m
        val = np.int64(-1)
        while t < cap:
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                _setbit(w, j, u < HALF)
            else:
                _flip(w, j)
            t += 1
            for r in range(m + 1):
                if _eq_row(path, r, w):
                    val = t
                    break
            if val >= 0:
                break
        values[i] = val
    return values, vsizes


@njit(cache=True)
def _eta_visit_words(seeds, n, m, cap, aperiodic, eta_words):
    trials = seeds.shape[0]
    values = np.empty(trials, np.int64)
    path = np.zeros((m + 1, 4), np.uint64)
    eta_path = np.zeros((m + 1, 4), np.uint64)
    a = np.zeros(4, np.uint64)
    b = np.zeros(4, np.uint64)
    for i in range(trials):
        state = seeds[i]
        _fill_plus(a, n)
        for k in range(4):
            b[k] = eta_words[k]
            path[0, k] = a[k]
            eta_path[0, k] = b[k]
        for t in range(1, m + 1):
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                plus = u < HALF
                _setbit(a, j, plus)
                _setbit(b, j, plus)
            else:
                _flip(a, j)
                _flip(b, j)
            for k in range(4):
                path[t, k] = a[k]
                eta_path[t, k] = b[k]
        bad = False
        for r in range(m + 1):
            if _eq_row(path, r, eta_words):
                bad = True
                break
        if bad:
            values[i] = -2
            continue
        val = np.int64(-1)
        for t in range(1, m + 1):
            hit = False
            for r in range(m + 1):
                if _eq_rows(path, r, eta_path, t):
                    hit = True
                    break
            if hit:
                val = t
                break
        t = m
        while val < 0 and t < cap:
            state, j = _coord(state, n)
            if aperiodic:
                state, u = _word(state)
                _setbit(b, j, u < HALF)
            else:
                _flip(b, j)
            t += 1
            for r in range(m + 1):
                if _eq_row(path, r, b):
                    val = t
                    break
        values[i] = val
    return values


def eta_visit_batch(seeds, n, m, cap, aperiodic, eta_bits):
    eta_words = np.array(
        [(eta_bits >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(4)],
        dtype=np.uint64,
    )
    return _eta_visit_words(seeds, n, m, cap, aperiodic, eta_words)
