"""Batch trial samplers: derived per-trial seeds, kernel dispatch and an
optional fork-based worker pool.

Trial i always uses derive_trial_seed(master, i), so results never depend on
how trials are scheduled across workers.
"""

from __future__ import annotations

import multiprocessing as mp

import numpy as np

from . import _backend
from .returns import ReturnDetector, default_selfint_cap
from .rng import RngStream, derive_trial_seed, derive_trial_seeds
from .stopping import PathReturnConfig, default_theta_cap, sample_theta
from .vertex import Vertex
from .walks import WalkKind, default_meeting_cap


def _dispatch(payload):
    kernel, args = payload
    return getattr(_backend.kernels, kernel)(*args)


def _run(kernel: str, seeds: np.ndarray, args: tuple, jobs: int = 1):
    seeds = np.asarray(seeds, dtype=np.uint64)
    if jobs <= 1 or seeds.size < 2 * jobs:
        return _dispatch((kernel, (seeds, *args)))
    chunks = np.array_split(seeds, jobs)
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs) as pool:
        parts = pool.map(_dispatch, [(kernel, (c, *args)) for c in chunks])
    if not isinstance(parts[0], tuple):
        return np.concatenate(parts)
    merged = []
    for idx in range(len(parts[0])):
        comps = [p[idx] for p in parts]
        if np.ndim(comps[0]) == 0:
            merged.append(type(comps[0])(sum(int(c) for c in comps)))
        else:
            merged.append(np.concatenate(comps))
    return tuple(merged)


def sample_selfint(n: int, trials: int, master_seed: int, cap: int | None = None, jobs: int = 1):
    """Self-intersection times of the periodic walk; (values, two_step flags).

    Censored trials carry value -1.
    """
    if cap is None:
        cap = default_selfint_cap(n)
    seeds = derive_trial_seeds(master_seed, trials)
    return _run("selfint_batch", seeds, (n, cap), jobs)


def sample_gamma1(n: int, trials: int, master_seed: int, cap: int | None = None, jobs: int = 1):
    """First 2-step return times (first repeat of consecutive indices)."""
    if cap is None:
        cap = 64 * n
    seeds = derive_trial_seeds(master_seed, trials)
    return _run("gamma1_batch", seeds, (n, cap), jobs)


def sample_gamma_l(n: int, l: int, trials: int, master_seed: int, cap: int | None = None):
    """First 2l-step return times via the online detector (value -1: censored)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if cap is None:
        cap = 64 * n**l
    if l == 1:
        return sample_gamma1(n, trials, master_seed, cap)
    values = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        rng = RngStream(derive_trial_seed(master_seed, i))
        det = ReturnDetector(l)
        val = -1
        for t in range(1, cap + 1):
            for fired_l, fired_t in det.feed(rng.next_coordinate(n), t):
                if fired_l == l:
                    val = fired_t
            if val > 0:
                break
        values[i] = val
    return values


def sample_meeting(n: int, trials: int, master_seed: int, cap: int | None = None, jobs: int = 1):
    """Meeting times of coupled lazy walks from all-plus/all-minus."""
    if cap is None:
        cap = default_meeting_cap(n)
    seeds = derive_trial_seeds(master_seed, trials)
    return _run("meeting_batch", seeds, (n, cap), jobs)


def sample_couple_distance(n: int, trials: int, master_seed: int, cap: int | None = None, jobs: int = 1):
    """Meeting times plus a per-step monotonicity audit of the coupled
    distance; returns (values, violation count, which must be zero)."""
    if cap is None:
        cap = default_meeting_cap(n)
    seeds = derive_trial_seeds(master_seed, trials)
    return _run("couple_distance_batch", seeds, (n, cap), jobs)


def sample_path_return_batch(n: int, m: int, cap: int, walk_kind: WalkKind, seeds, jobs: int = 1):
    """Path-return times for explicit seeds; (values, path set sizes)."""
    aperiodic = walk_kind is WalkKind.APERIODIC
    return _run("path_return_batch", seeds, (n, m, cap, aperiodic), jobs)


def sample_path_returns(config: PathReturnConfig, jobs: int = 1, trial_offset: int = 0):
    """All configured path-return trials; (values, path set sizes)."""
    seeds = derive_trial_seeds(config.master_seed, config.trials, offset=trial_offset)
    return sample_path_return_batch(
        config.n, config.path_length, config.effective_cap, config.walk_kind, seeds, jobs
    )


def sample_eta_visits(config: PathReturnConfig, eta: Vertex, jobs: int = 1):
    """First-visit times to V of the coupled eta-started walk."""
    if eta.n != config.n:
        raise ValueError("eta dimension mismatch")
    seeds = derive_trial_seeds(config.master_seed, config.trials)
    aperiodic = config.walk_kind is WalkKind.APERIODIC
    values = _run(
        "eta_visit_batch",
        seeds,
        (config.n, config.path_length, config.effective_cap, aperiodic, eta.bits),
        jobs,
    )
    if np.any(values == -2):
        raise ValueError("eta fell inside the realized path V in some trial")
    return values


def _theta_chunk(payload):
    n, gamma, master_seed, lo, hi, walk_kind, cap, inclusion_prob = payload
    values = np.empty(hi - lo, dtype=np.int64)
    start_in = np.zeros(hi - lo, dtype=np.uint8)
    for i in range(lo, hi):
        s = sample_theta(n, gamma, master_seed, i, walk_kind, cap, inclusion_prob)
        values[i - lo] = s.value if isinstance(s.value, int) else -1
        start_in[i - lo] = 1 if s.start_in_set else 0
    return values, start_in


def sample_thetas(
    n: int,
    gamma: float,
    trials: int,
    master_seed: int,
    walk_kind: WalkKind = WalkKind.PERIODIC,
    cap: int | None = None,
    inclusion_prob: float | None = None,
    jobs: int = 1,
):
    """Random-set hitting times, fresh set per trial; (values, start flags)."""
    if cap is None:
        cap = default_theta_cap(n, gamma)
    if jobs <= 1 or trials < 2 * jobs:
        return _theta_chunk((n, gamma, master_seed, 0, trials, walk_kind, cap, inclusion_prob))
    bounds = np.linspace(0, trials, jobs + 1, dtype=int)
    payloads = [
        (n, gamma, master_seed, int(lo), int(hi), walk_kind, cap, inclusion_prob)
        for lo, hi in zip(bounds[:-1], bounds[1:])
        if hi > lo
    ]
    ctx = mp.get_context("fork")
    with ctx.Pool(len(payloads)) as pool:
        parts = pool.map(_theta_chunk, payloads)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])
