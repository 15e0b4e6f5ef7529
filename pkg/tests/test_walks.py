"""Walk dynamics, the shared-randomness coupling and the meeting time."""

import math
from fractions import Fraction

import pytest

from cubewalks.rng import RngStream
from cubewalks.vertex import Vertex, all_minus, all_plus, hamming
from cubewalks.walks import (
    Censored,
    CoupledPair,
    WalkEngine,
    WalkKind,
    coupled_step,
    default_meeting_cap,
    distance,
    meeting_time,
)


def test_periodic_walk_alternates_in_dimension_one():
    engine = WalkEngine(WalkKind.PERIODIC, all_plus(1), RngStream(0))
    states = [engine.step()[0].bits for _ in range(6)]
    assert states == [0, 1, 0, 1, 0, 1]


def test_periodic_walk_preserves_parity():
    engine = WalkEngine(WalkKind.PERIODIC, all_plus(9), RngStream(3))
    for _ in range(200):
        state, _ = engine.step()
        # After t flips the number of -1 coordinates has the parity of t.
        assert (9 - state.bits.bit_count()) % 2 == engine.time % 2


def test_aperiodic_walk_stays_put_about_half_the_time():
    engine = WalkEngine(WalkKind.APERIODIC, all_plus(8), RngStream(17))
    stays = 0
    trials = 4000
    prev = engine.state
    for _ in range(trials):
        state, _ = engine.step()
        stays += state == prev
        prev = state
    # Binomial(trials, 1/2) within 4 sigma.
    assert abs(stays - trials / 2) <= 4 * math.sqrt(trials) / 2


def test_aperiodic_step_moves_at_most_one_coordinate():
    engine = WalkEngine(WalkKind.APERIODIC, all_minus(12), RngStream(5))
    prev = engine.state
    for _ in range(300):
        state, j = engine.step()
        assert hamming(state, prev) <= 1
        assert prev.bits ^ state.bits in (0, 1 << j)
        prev = state


def test_coupling_requires_matching_dimension():
    with pytest.raises(ValueError):
        CoupledPair(WalkKind.APERIODIC, all_plus(3), all_plus(4), RngStream(0))


def test_coupled_distance_monotone_and_absorbing():
    pair = CoupledPair(WalkKind.APERIODIC, all_plus(10), all_minus(10), RngStream(8))
    prev = distance(pair)
    assert prev == 1
    met_at = None
    for _ in range(2000):
        coupled_step(pair)
        d = distance(pair)
        assert d <= prev
        prev = d
        if met_at is None and d == 0:
            met_at = pair.time
        if met_at is not None:
            assert d == 0  # absorbed
    assert met_at is not None


def test_periodic_coupling_preserves_distance():
    pair = CoupledPair(WalkKind.PERIODIC, all_plus(6), all_minus(6), RngStream(1))
    for _ in range(100):
        coupled_step(pair)
        assert distance(pair) == 1


def test_distance_is_exact_fraction():
    pair = CoupledPair(WalkKind.APERIODIC, all_plus(3), Vertex(3, 0b011), RngStream(0))
    assert distance(pair) == Fraction(1, 3)


def test_meeting_time_dimension_one_is_one_step():
    # One lazy coordinate draw equalizes a single-coordinate pair.
    for seed in range(20):
        assert meeting_time(1, RngStream(seed)) == 1


def test_meeting_time_censoring():
    result = meeting_time(16, RngStream(0), cap=1)
    assert result == Censored(1) or isinstance(result, int)
    with pytest.raises(ValueError):
        meeting_time(4, RngStream(0), cap=0)


def test_default_meeting_cap():
    assert default_meeting_cap(1) == 64
    assert default_meeting_cap(16) == math.ceil(64 * 16 * math.log(16))


def test_meeting_time_reproducible():
    vals = [meeting_time(8, RngStream(s)) for s in range(10)]
    assert vals == [meeting_time(8, RngStream(s)) for s in range(10)]
    assert all(isinstance(v, int) and v >= 1 for v in vals)
