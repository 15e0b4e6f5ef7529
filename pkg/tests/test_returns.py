"""Return-word combinatorics, exhaustive enumeration and online detection."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubewalks.returns import (
    ReturnDetector,
    default_selfint_cap,
    enumerate_jl,
    f2l,
    first_self_intersection,
    g2l,
    h2l,
    iter_jl,
)
from cubewalks.rng import RngStream
from cubewalks.vertex import all_plus
from cubewalks.walks import Censored, WalkEngine, WalkKind

words = st.lists(st.integers(min_value=0, max_value=4), min_size=2, max_size=10).filter(
    lambda w: len(w) % 2 == 0
)


# ---------------------------------------------------------------- indicators


def test_indicator_frozen_examples():
    assert f2l([0, 0]) == 1
    assert f2l([0, 1]) == 0
    assert f2l([1, 2, 1, 2]) == 1
    assert h2l([1, 2, 1, 2]) == 1
    assert g2l([1, 2, 1, 2]) == 1
    # Contains the 2-step sub-return (1, 1): not an exact 4-step return.
    assert f2l([1, 1, 2, 2]) == 1
    assert h2l([1, 1, 2, 2]) == 0
    assert g2l([1, 1, 2, 2]) == 0
    # Contains the interior sub-return (2, 2).
    assert f2l([1, 2, 2, 1]) == 1
    assert h2l([1, 2, 2, 1]) == 0
    assert g2l([1, 2, 2, 1]) == 0


def test_indicator_validation():
    with pytest.raises(ValueError):
        f2l([1, 2, 3])
    with pytest.raises(ValueError):
        h2l([1, 1])  # half-length 1 has no proper sub-windows
    with pytest.raises(ValueError):
        g2l([1])


@given(words, st.permutations(range(5)))
def test_indicators_invariant_under_alphabet_relabeling(word, perm):
    relabeled = [perm[c] for c in word]
    assert f2l(word) == f2l(relabeled)
    if len(word) >= 4:
        assert h2l(word) == h2l(relabeled)
    assert g2l(word) == g2l(relabeled)


@given(words)
@settings(max_examples=200)
def test_f_matches_spin_composition_oracle(word):
    # f = 1 exactly when composing the spins returns the start vertex.
    v = all_plus(5)
    bits = v.bits
    for j in word:
        bits ^= 1 << j
    assert f2l(word) == (1 if bits == v.bits else 0)


@given(words)
@settings(max_examples=200)
def test_g_matches_exact_first_return_oracle(word):
    # g = 1 exactly when the state trajectory of the word visits distinct
    # vertices at every interior time and closes only at the very end.
    bits = 0
    states = [bits]
    for j in word:
        bits ^= 1 << j
        states.append(bits)
    closes = states[-1] == states[0]
    interior_fresh = len(set(states[:-1])) == len(states) - 1
    assert g2l(word) == (1 if closes and interior_fresh else 0)


# --------------------------------------------------------------- enumeration


def test_enumeration_small_counts():
    # Half-length 1: the n words (j, j).
    for n in range(2, 7):
        assert enumerate_jl(n, 1) == n
    # Half-length 2: abab/abba patterns with a != b.
    for n in range(3, 7):
        assert enumerate_jl(n, 2) == n * (n - 1)


def test_enumeration_guard_and_validation():
    with pytest.raises(ValueError):
        enumerate_jl(0, 1)
    with pytest.raises(ValueError):
        enumerate_jl(10, 9)  # 10^18 words


def test_iter_matches_count_and_yields_valid_words():
    members = list(iter_jl(4, 2))
    assert len(members) == enumerate_jl(4, 2) == 12
    assert all(g2l(w) == 1 for w in members)
    assert len(set(members)) == len(members)


# ------------------------------------------------------------------ detector


def _oracle_first_returns(word, l_max):
    """First 2l-step returns from the exact state trajectory."""
    bits = 0
    states = [bits]
    for j in word:
        bits ^= 1 << j
        states.append(bits)
    fired = {}
    for t in range(1, len(states)):
        for l in range(1, l_max + 1):
            if l in fired or t < 2 * l:
                continue
            window = states[t - 2 * l : t + 1]
            if window[-1] == window[0] and len(set(window[:-1])) == 2 * l:
                fired[l] = t
    return fired


@given(st.lists(st.integers(min_value=0, max_value=4), min_size=0, max_size=40))
@settings(max_examples=200)
def test_detector_matches_state_oracle(word):
    det = ReturnDetector(4)
    for t, j in enumerate(word, start=1):
        det.feed(j, t)
    assert det.fired == _oracle_first_returns(word, 4)


def test_detector_order_enforced():
    det = ReturnDetector(2)
    det.feed(0, 1)
    with pytest.raises(ValueError):
        det.feed(1, 3)
    with pytest.raises(ValueError):
        ReturnDetector(0)


def test_detector_simple_trace():
    det = ReturnDetector(2)
    assert det.feed(1, 1) == []
    assert det.feed(2, 2) == []
    assert det.feed(1, 3) == []
    assert det.feed(2, 4) == [(2, 4)]
    assert det.feed(2, 5) == [(1, 5)]


# --------------------------------------------------- first self-intersection


def test_self_intersection_requires_periodic_walk():
    engine = WalkEngine(WalkKind.APERIODIC, all_plus(4), RngStream(0))
    with pytest.raises(ValueError):
        first_self_intersection(engine)


def test_self_intersection_dimension_one_is_two():
    for seed in range(10):
        engine = WalkEngine(WalkKind.PERIODIC, all_plus(1), RngStream(seed))
        assert first_self_intersection(engine) == 2


def test_self_intersection_is_min_first_return_small_dims():
    # The first self-intersection closes some first 2l-step return.
    for n in range(2, 7):
        for seed in range(40):
            engine = WalkEngine(WalkKind.PERIODIC, all_plus(n), RngStream(seed))
            trace = []
            orig_step = engine.step

            def step():
                s, j = orig_step()
                trace.append(j)
                return s, j

            engine.step = step
            s = first_self_intersection(engine, cap=default_selfint_cap(n))
            assert not isinstance(s, Censored)
            fired = _oracle_first_returns(trace, s)  # l can't exceed s/2
            assert s == min(fired.values())


def test_self_intersection_censoring():
    engine = WalkEngine(WalkKind.PERIODIC, all_plus(30), RngStream(0))
    assert first_self_intersection(engine, cap=1) == Censored(1)
