"""The 2l-step return machinery: the even-count indicator f, the
no-sub-return indicator h, their product g, exhaustive enumeration of the
return-word sets, online first-return detection and the first
self-intersection time."""

from __future__ import annotations

from collections import Counter, deque
from itertools import product
from typing import Iterator, Sequence

from .walks import Censored, WalkEngine, WalkKind

ENUMERATION_GUARD = 10**8


def f2l(word: Sequence[int]) -> int:
    """1 iff every value in the word occurs an even number of times.

    Equivalently: composing spins along the word maps any vertex to itself.
    """
    if len(word) % 2:
        raise ValueError("return words have even length")
    return 1 if all(c % 2 == 0 for c in Counter(word).values()) else 0


def h2l(word: Sequence[int]) -> int:
    """1 iff no proper contiguous even-length sub-window has all-even counts.

    The full window itself is the single excluded term; windows of odd length
    can never have all-even counts, so only even lengths are inspected.
    """
    m = len(word)
    if m % 2:
        raise ValueError("return words have even length")
    l = m // 2
    if l < 2:
        raise ValueError("h is defined for half-length l >= 2 only")
    for j in range(1, 2 * l + 1):
        for k in range(1, (2 * l + 1 - j) // 2 + 1):
            if j == 1 and k == l:
                continue
            end = j + 2 * k - 1
            assert end <= 2 * l, "sub-window bound exceeded"
            if f2l(word[j - 1 : end]):
                return 0
    return 1


def g2l(word: Sequence[int]) -> int:
    """1 iff the word encodes an exact 2l-step return (f for l=1, f*h else)."""
    if len(word) % 2:
        raise ValueError("return words have even length")
    if len(word) == 2:
        return f2l(word)
    return f2l(word) and h2l(word)


def _check_enumerable(n: int, l: int) -> None:
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    if n ** (2 * l) > ENUMERATION_GUARD:
        raise ValueError(
            f"refusing to enumerate {n}^{2 * l} = {n ** (2 * l)} words "
            f"(guard: at most {ENUMERATION_GUARD})"
        )


def iter_jl(n: int, l: int) -> Iterator[tuple[int, ...]]:
    """Yield every return word of half-length l over the alphabet [0, n)."""
    _check_enumerable(n, l)
    for word in product(range(n), repeat=2 * l):
        if g2l(word):
            yield word


def enumerate_jl(n: int, l: int) -> int:
    """Exact size of the return-word set by exhaustive evaluation."""
    _check_enumerable(n, l)
    return sum(1 for _ in iter_jl(n, l))


class ReturnDetector:
    """Online first 2l-step return detection over a coordinate-index stream.

    Keeps the last 2*l_max indices in a ring buffer and, for each half-length
    l not yet fired, evaluates g on the trailing window.
    """

    def __init__(self, l_max: int):
        if l_max < 1:
            raise ValueError("l_max must be >= 1")
        self.l_max = l_max
        self.window: deque[int] = deque(maxlen=2 * l_max)
        self.fired: dict[int, int] = {}
        self._count = 0

    def feed(self, j: int, t: int) -> list[tuple[int, int]]:
        """Feed index j observed at time t; returns newly fired (l, t) pairs."""
        if t != self._count + 1:
            raise ValueError("indices must be fed in trajectory order")
        self._count = t
        self.window.append(j)
        hits = []
        buf = list(self.window)
        for l in range(1, self.l_max + 1):
            if l in self.fired or t < 2 * l:
                continue
            if g2l(buf[-2 * l :]):
                self.fired[l] = t
                hits.append((l, t))
        return hits


def default_selfint_cap(n: int) -> int:
    """64 * n; censoring probability is about e**-64 under the limit law."""
    return 64 * n


def first_self_intersection(engine: WalkEngine, cap: int | None = None) -> int | Censored:
    """First time a periodic walk revisits any previously visited vertex."""
    if engine.kind is not WalkKind.PERIODIC:
        raise ValueError("self-intersection is defined for the periodic walk")
    n = engine.state.n
    if cap is None:
        cap = default_selfint_cap(n)
    visited = {engine.state.bits}
    while engine.time < cap:
        state, _ = engine.step()
        if engine.time >= 2 and state.bits in visited:
            return engine.time
        visited.add(state.bits)
    return Censored(cap)
