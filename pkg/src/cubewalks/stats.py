"""Empirical distribution summaries and goodness of fit against the
mean-one exponential limit laws."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmpiricalDist:
    """Sorted non-negative samples plus a count of right-censored trials.

    Censored trials are known only to exceed every t below `cap`.
    """

    samples: np.ndarray
    censored_count: int = 0
    cap: float | None = None

    @classmethod
    def from_samples(cls, values, censored_count: int = 0, cap: float | None = None):
        arr = np.sort(np.asarray(values, dtype=float))
        if arr.size and (not np.all(np.isfinite(arr)) or arr[0] < 0):
            raise ValueError("samples must be finite and non-negative")
        if censored_count < 0:
            raise ValueError("censored_count must be >= 0")
        if censored_count > 0 and cap is None:
            raise ValueError("censored samples need a cap")
        return cls(arr, censored_count, cap)

    @property
    def total(self) -> int:
        return self.samples.size + self.censored_count


def survival(d: EmpiricalDist, t: float) -> float:
    """Empirical P(X > t); censored trials count as exceeding t below cap."""
    if d.total == 0:
        raise ValueError("no data")
    if d.censored_count > 0 and t >= d.cap:
        raise ValueError(f"survival at t >= cap {d.cap} is unknown with censored data")
    exceed = d.samples.size - np.searchsorted(d.samples, t, side="right")
    return (int(exceed) + d.censored_count) / d.total


def ks_exp1(d: EmpiricalDist) -> float:
    """sup-distance between the empirical CDF and 1 - e^-x at both step edges."""
    if d.censored_count > 0:
        raise ValueError("ks_exp1 requires uncensored data")
    n = d.samples.size
    if n == 0:
        raise ValueError("no data")
    cdf = 1.0 - np.exp(-d.samples)
    i = np.arange(1, n + 1)
    upper = np.max(np.abs(cdf - i / n))
    lower = np.max(np.abs(cdf - (i - 1) / n))
    return float(max(upper, lower))


def ks_two_sample(a, b) -> float:
    """sup-distance between the empirical CDFs of two samples."""
    xa = np.sort(np.asarray(a, dtype=float))
    xb = np.sort(np.asarray(b, dtype=float))
    if xa.size == 0 or xb.size == 0:
        raise ValueError("no data")
    grid = np.concatenate([xa, xb])
    fa = np.searchsorted(xa, grid, side="right") / xa.size
    fb = np.searchsorted(xb, grid, side="right") / xb.size
    return float(np.max(np.abs(fa - fb)))


def mean_ci(d: EmpiricalDist) -> tuple[float, float]:
    """Sample mean and 95% normal half-width 1.96 * s / sqrt(n)."""
    if d.censored_count > 0:
        raise ValueError("mean_ci requires uncensored data")
    n = d.samples.size
    if n < 2:
        raise ValueError("need at least two samples")
    mean = float(np.mean(d.samples))
    half = float(1.96 * np.std(d.samples, ddof=1) / np.sqrt(n))
    return mean, half
