"""Path-return times, the e^-1 quantile used to normalize them, and the
hitting time of a lazily sampled random set.

These are the single-trial reference implementations; the batch samplers in
`samplers` drive the accelerated kernels and must agree with them
bit-for-bit (tested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import RngStream, derive_trial_seed, derive_trial_seeds
from .vertex import Vertex, all_plus
from .walks import Censored, WalkEngine, WalkKind

# Disjoint sub-stream tags and the pilot trial-index block.
WALK_SUBSTREAM = 0
MEMBERSHIP_SUBSTREAM = 1
PILOT_TRIAL_OFFSET = 1 << 40


@dataclass(frozen=True)
class PathReturnConfig:
    """Parameters of one path-return experiment."""

    n: int
    gamma: float
    walk_kind: WalkKind = WalkKind.PERIODIC
    cap: int | None = None
    trials: int = 2000
    master_seed: int = 0

    def __post_init__(self):
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must be in (0, 1)")
        if self.path_length < 1:
            raise ValueError("path length floor(n**gamma) must be >= 1")
        if self.effective_cap <= self.path_length:
            raise ValueError("cap must exceed the recorded path length")

    @property
    def path_length(self) -> int:
        """m = floor(n**gamma), the last recorded path time."""
        return int(self.n**self.gamma)

    @property
    def effective_cap(self) -> int:
        """Given cap, or 64 * 2^n / (m+1) so censoring is ~e^-64 rare."""
        if self.cap is not None:
            return self.cap
        return 64 * (1 << self.n) // (self.path_length + 1)


def _walk_path(config: PathReturnConfig, rng: RngStream):
    """Run the walk through time m; returns (engine, path states list)."""
    engine = WalkEngine(config.walk_kind, all_plus(config.n), rng)
    path = [engine.state]
    for _ in range(config.path_length):
        state, _ = engine.step()
        path.append(state)
    return engine, path


def sample_path_return(config: PathReturnConfig, trial: int):
    """One sample of the first return to the walk's own initial path.

    Returns (R, |V|): the first t > m with state in V = {states at 0..m},
    or Censored, plus the number of distinct recorded states.
    """
    rng = RngStream(derive_trial_seed(config.master_seed, trial))
    engine, path = _walk_path(config, rng)
    v_bits = {s.bits for s in path}
    cap = config.effective_cap
    while engine.time < cap:
        state, _ = engine.step()
        if state.bits in v_bits:
            return engine.time, len(v_bits)
    return Censored(cap), len(v_bits)


def sample_eta_visit(config: PathReturnConfig, eta: Vertex, trial: int):
    """First visit of the eta-started walk to V, coupled with the V-walk.

    Both walks consume the same (index, sign) draws. Raises if eta lands in
    the realized V, which the asymptotic statement excludes.
    """
    if eta.n != config.n:
        raise ValueError("eta dimension mismatch")
    rng = RngStream(derive_trial_seed(config.master_seed, trial))
    plus = all_plus(config.n)
    a, b = plus, eta
    eta_path = [b]
    path = [a]
    for _ in range(config.path_length):
        j = rng.next_coordinate(config.n)
        if config.walk_kind is WalkKind.APERIODIC:
            s = rng.next_sign()
            bit = 1 << j
            a = Vertex(config.n, a.bits | bit if s == 1 else a.bits & ~bit)
            b = Vertex(config.n, b.bits | bit if s == 1 else b.bits & ~bit)
        else:
            a = Vertex(config.n, a.bits ^ (1 << j))
            b = Vertex(config.n, b.bits ^ (1 << j))
        path.append(a)
        eta_path.append(b)
    v_bits = {s.bits for s in path}
    if eta.bits in v_bits:
        raise ValueError("eta must lie outside the realized path V")
    for t in range(1, len(eta_path)):
        if eta_path[t].bits in v_bits:
            return t
    t = config.path_length
    cap = config.effective_cap
    while t < cap:
        j = rng.next_coordinate(config.n)
        if config.walk_kind is WalkKind.APERIODIC:
            s = rng.next_sign()
            bit = 1 << j
            b = Vertex(config.n, b.bits | bit if s == 1 else b.bits & ~bit)
        else:
            b = Vertex(config.n, b.bits ^ (1 << j))
        t += 1
        if b.bits in v_bits:
            return t
    return Censored(cap)


@dataclass(frozen=True)
class BetaEstimate:
    """Empirical e^-1 survival quantile of the path-return time."""

    beta_hat: int
    pilot_trials: int
    pilot_seed: int


def beta_from_samples(values: np.ndarray, censored: np.ndarray) -> int:
    """Smallest t with empirical P(R >= t) <= e^-1; censored count as large."""
    total = values.size
    if total == 0 or bool(np.all(censored)):
        raise ValueError("all pilot trials censored; increase the cap")
    finite = np.sort(values[~censored])
    n_cens = int(np.count_nonzero(censored))
    target = total / math.e
    # P(R >= t) changes only at observed values; scan candidate t = v + 1.
    for v in finite:
        t = int(v) + 1
        at_least = total - int(np.searchsorted(finite, t, side="left"))
        if at_least + n_cens <= target:
            return t
    raise ValueError("survival never drops below e^-1; increase the cap")


def estimate_beta(config: PathReturnConfig, pilot_trials: int = 2000) -> BetaEstimate:
    """Estimate beta from a pilot sample with its own derived-seed block."""
    if pilot_trials < 500:
        raise ValueError("pilot needs at least 500 trials")
    from . import samplers

    pilot_seed = derive_trial_seed(config.master_seed, PILOT_TRIAL_OFFSET)
    values, vsizes = samplers.sample_path_return_batch(
        config.n,
        config.path_length,
        config.effective_cap,
        config.walk_kind,
        derive_trial_seeds(config.master_seed, pilot_trials, offset=PILOT_TRIAL_OFFSET),
    )
    censored = values < 0
    return BetaEstimate(beta_from_samples(values, censored), pilot_trials, pilot_seed)


class RandomSetMembership:
    """Lazily sampled random subset of the hypercube, memoized per vertex.

    Each vertex is independently a member with the given inclusion
    probability; a vertex's draw happens at most once, so revisits are
    consistent. The membership stream is separate from any walk stream.
    """

    def __init__(self, inclusion_prob: float, rng: RngStream):
        if not 0 < inclusion_prob <= 1:
            raise ValueError("inclusion probability must be in (0, 1]")
        self.inclusion_prob = inclusion_prob
        self._threshold = min(int(inclusion_prob * (1 << 64)), 1 << 64)
        self._memo: dict[int, bool] = {}
        self._rng = rng
        self.draws = 0

    def contains(self, v: Vertex) -> bool:
        got = self._memo.get(v.bits)
        if got is None:
            self.draws += 1
            got = self._rng.next_word() < self._threshold
            self._memo[v.bits] = got
        return got


def default_theta_cap(n: int, gamma: float) -> int:
    return max(64, math.ceil(64 * n**gamma))


@dataclass(frozen=True)
class ThetaSample:
    """One hitting-time sample of a fresh random set."""

    value: int | Censored
    start_in_set: bool


def sample_theta(
    n: int,
    gamma: float,
    master_seed: int,
    trial: int,
    walk_kind: WalkKind = WalkKind.PERIODIC,
    cap: int | None = None,
    inclusion_prob: float | None = None,
) -> ThetaSample:
    """First time t > 0 the walk sits in a fresh random set.

    A new set is realized every trial. The start vertex's membership is
    drawn and reported but never stops the walk at t = 0.
    """
    if inclusion_prob is None:
        if not 0 < gamma < 1:
            raise ValueError("gamma must be in (0, 1)")
        inclusion_prob = n**-gamma
    if cap is None:
        cap = default_theta_cap(n, gamma)
    trial_seed = derive_trial_seed(master_seed, trial)
    walk_rng = RngStream(derive_trial_seed(trial_seed, WALK_SUBSTREAM))
    member_rng = RngStream(derive_trial_seed(trial_seed, MEMBERSHIP_SUBSTREAM))
    members = RandomSetMembership(inclusion_prob, member_rng)
    engine = WalkEngine(walk_kind, all_plus(n), walk_rng)
    start_in = members.contains(engine.state)
    while engine.time < cap:
        state, _ = engine.step()
        if members.contains(state):
            return ThetaSample(engine.time, start_in)
    return ThetaSample(Censored(cap), start_in)
