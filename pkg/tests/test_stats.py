"""Empirical distribution summaries and goodness-of-fit statistics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubewalks.stats import EmpiricalDist, ks_exp1, ks_two_sample, mean_ci, survival


def test_from_samples_validation():
    with pytest.raises(ValueError):
        EmpiricalDist.from_samples([-1.0])
    with pytest.raises(ValueError):
        EmpiricalDist.from_samples([float("nan")])
    with pytest.raises(ValueError):
        EmpiricalDist.from_samples([1.0], censored_count=2)  # needs a cap
    d = EmpiricalDist.from_samples([3.0, 1.0, 2.0], censored_count=1, cap=10.0)
    assert d.total == 4
    assert list(d.samples) == [1.0, 2.0, 3.0]


def test_survival_frozen_cases():
    d = EmpiricalDist.from_samples([1.0, 2.0, 3.0])
    assert survival(d, 0.0) == 1.0
    assert survival(d, 1.0) == 2 / 3
    assert survival(d, 2.5) == 1 / 3
    assert survival(d, 3.0) == 0.0


def test_survival_with_censoring():
    d = EmpiricalDist.from_samples([1.0, 2.0], censored_count=2, cap=5.0)
    assert survival(d, 1.5) == 3 / 4
    with pytest.raises(ValueError):
        survival(d, 5.0)  # unknown beyond the cap
    with pytest.raises(ValueError):
        survival(EmpiricalDist.from_samples([]), 0.0)


def test_ks_exp1_frozen_cases():
    # A point mass at ln 2 sits exactly at the median of Exp(1):
    # sup distance is max(|1/2 - 1|, |1/2 - 0|) = 1/2.
    d = EmpiricalDist.from_samples([math.log(2.0)])
    assert ks_exp1(d) == pytest.approx(0.5)
    # A point mass at 0: F(0) = 0, empirical jumps to 1.
    assert ks_exp1(EmpiricalDist.from_samples([0.0])) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ks_exp1(EmpiricalDist.from_samples([1.0], censored_count=1, cap=2.0))


def test_ks_exp1_accepts_true_exponential_sample():
    rng = np.random.default_rng(0)
    x = rng.exponential(size=20_000)
    # 1% critical value of the one-sample KS statistic.
    assert ks_exp1(EmpiricalDist.from_samples(x)) <= 1.63 / math.sqrt(x.size)


def test_ks_exp1_rejects_wrong_scale():
    rng = np.random.default_rng(1)
    x = 2.0 * rng.exponential(size=5000)
    assert ks_exp1(EmpiricalDist.from_samples(x)) > 0.1


def test_ks_two_sample_frozen_cases():
    assert ks_two_sample([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert ks_two_sample([0.0], [1.0]) == 1.0
    assert ks_two_sample([1, 2, 3, 4], [3, 4, 5, 6]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        ks_two_sample([], [1.0])


@given(
    st.lists(st.floats(min_value=0, max_value=100), min_size=1, max_size=50),
    st.lists(st.floats(min_value=0, max_value=100), min_size=1, max_size=50),
)
@settings(max_examples=100)
def test_ks_two_sample_is_symmetric_and_bounded(a, b):
    d = ks_two_sample(a, b)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(ks_two_sample(b, a))


def test_mean_ci_frozen_case():
    mean, half = mean_ci(EmpiricalDist.from_samples([0.0, 2.0]))
    assert mean == pytest.approx(1.0)
    # s = sqrt(2), half = 1.96 * sqrt(2) / sqrt(2) = 1.96.
    assert half == pytest.approx(1.96)
    with pytest.raises(ValueError):
        mean_ci(EmpiricalDist.from_samples([1.0]))


def test_mean_ci_coverage():
    rng = np.random.default_rng(7)
    hits = 0
    reps = 400
    for _ in range(reps):
        x = rng.exponential(size=200)
        mean, half = mean_ci(EmpiricalDist.from_samples(x))
        hits += abs(mean - 1.0) <= half
    # Nominal 95% coverage; allow 4 sigma of Binomial(reps, 0.95).
    assert hits >= reps * 0.95 - 4 * math.sqrt(reps * 0.95 * 0.05)
