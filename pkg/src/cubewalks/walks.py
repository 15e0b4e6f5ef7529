"""Periodic and lazy (aperiodic) walks, their shared-randomness coupling,
the coupled distance process and the meeting time."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .rng import RngStream
from .vertex import Vertex, all_minus, all_plus, hamming, spin


class WalkKind(Enum):
    PERIODIC = "periodic"
    APERIODIC = "aperiodic"


@dataclass(frozen=True)
class Censored:
    """A stopping time not observed within `cap` steps."""

    cap: int


class WalkEngine:
    """A walk's current state plus its deterministic randomness stream.

    The aperiodic step always consumes a coordinate draw followed by a sign
    draw, even when the sign leaves the state unchanged, so the number of
    draws per step is fixed and replay is position-independent.
    """

    def __init__(self, kind: WalkKind, start: Vertex, rng: RngStream):
        self.kind = kind
        self.state = start
        self.time = 0
        self.rng = rng
        self.last_index: int | None = None

    def step(self) -> tuple[Vertex, int]:
        """Advance one step; returns (new state, chosen coordinate)."""
        j = self.rng.next_coordinate(self.state.n)
        if self.kind is WalkKind.PERIODIC:
            self.state = spin(self.state, j)
        else:
            s = self.rng.next_sign()
            bit = 1 << j
            bits = self.state.bits | bit if s == 1 else self.state.bits & ~bit
            self.state = Vertex(self.state.n, bits)
        self.time += 1
        self.last_index = j
        return self.state, j


class CoupledPair:
    """Two walks driven by one stream: same coordinate, same sign each step.

    The aperiodic coupling is the contracting one (coordinates once equalized
    stay equal). The periodic same-index variant never contracts distance and
    is provided for parity experiments only.
    """

    def __init__(self, kind: WalkKind, a: Vertex, b: Vertex, rng: RngStream):
        if a.n != b.n:
            raise ValueError("coupled walks must share a dimension")
        self.kind = kind
        self.a = a
        self.b = b
        self.time = 0
        self.rng = rng


def coupled_step(pair: CoupledPair) -> CoupledPair:
    """Advance both walks with one (index, sign) draw."""
    n = pair.a.n
    j = pair.rng.next_coordinate(n)
    bit = 1 << j
    if pair.kind is WalkKind.APERIODIC:
        s = pair.rng.next_sign()
        if s == 1:
            pair.a = Vertex(n, pair.a.bits | bit)
            pair.b = Vertex(n, pair.b.bits | bit)
        else:
            pair.a = Vertex(n, pair.a.bits & ~bit)
            pair.b = Vertex(n, pair.b.bits & ~bit)
    else:
        pair.a = Vertex(n, pair.a.bits ^ bit)
        pair.b = Vertex(n, pair.b.bits ^ bit)
    pair.time += 1
    return pair


def distance(pair: CoupledPair) -> Fraction:
    """Fraction of disagreeing coordinates; an absorbing Ehrenfest chain."""
    return Fraction(hamming(pair.a, pair.b), pair.a.n)


def default_meeting_cap(n: int) -> int:
    """64 * n * ln(n), floored at 64; keeps censoring astronomically rare."""
    return max(64, math.ceil(64 * n * math.log(n)) if n > 1 else 64)


def meeting_time(n: int, rng: RngStream, cap: int | None = None) -> int | Censored:
    """First time coupled lazy walks from all-plus and all-minus coincide."""
    if cap is None:
        cap = default_meeting_cap(n)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    pair = CoupledPair(WalkKind.APERIODIC, all_plus(n), all_minus(n), rng)
    while pair.time < cap:
        coupled_step(pair)
        if pair.a == pair.b:
            return pair.time
    return Censored(cap)
