"""Reproducible experiment runner: one subcommand per stopping time.

Output is CSV (manifest as a leading '#' comment block, records as
`trial,seed,value,censored`, summary as a trailing comment block) or the
equivalent JSON object. Identical specs produce byte-identical record
sections; records are sorted by trial index, so worker count never matters.

Exit codes: 0 success, 2 validation failure, 3 censoring above 1%.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, samplers
from ._backend import BACKEND
from .returns import default_selfint_cap, enumerate_jl, iter_jl
from .rng import ALGORITHM_ID, derive_trial_seeds
from .stats import EmpiricalDist, ks_exp1, mean_ci
from .stopping import (
    PathReturnConfig,
    beta_from_samples,
    default_theta_cap,
    estimate_beta,
)
from .vertex import MAX_DIM, all_minus
from .walks import WalkKind, default_meeting_cap

CENSOR_LIMIT = 0.01
DEFAULT_PILOT = 2000
DEFAULT_DELTA = 0.25


class CliError(Exception):
    """Validation failure; maps to exit code 2."""


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _walk_kind(name: str) -> WalkKind:
    return WalkKind.APERIODIC if name == "aperiodic" else WalkKind.PERIODIC


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise CliError(msg)


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get("CUBEWALKS_OUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(args, manifest: dict, records: list[dict], summary: dict) -> None:
    path = _resolve_out(args.out)
    if args.format == "json":
        text = json.dumps(
            {"manifest": manifest, "records": records, "summary": summary},
            indent=2,
        ) + "\n"
    else:
        lines = [f"# manifest {k}={_fmt(v)}" for k, v in manifest.items()]
        lines.append("trial,seed,value,censored")
        for r in records:
            lines.append(f"{r['trial']},{r['seed']},{r['value']},{r['censored']}")
        lines.extend(f"# summary {k}={_fmt(v)}" for k, v in summary.items())
        text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _records(values: np.ndarray, cap: int, master_seed: int, offset: int = 0) -> list[dict]:
    seeds = derive_trial_seeds(master_seed, len(values), offset=offset)
    return [
        {
            "trial": i,
            "seed": int(seeds[i]),
            "value": int(v) if v >= 0 else cap,
            "censored": 0 if v >= 0 else 1,
        }
        for i, v in enumerate(values)
    ]


def _base_summary(values: np.ndarray, cap: int) -> tuple[dict, EmpiricalDist]:
    censored = int(np.count_nonzero(values < 0))
    dist = EmpiricalDist.from_samples(
        values[values >= 0].astype(float), censored, float(cap)
    )
    summary: dict = {"trials": int(values.size), "censored": censored}
    if dist.samples.size >= 2:
        mean, half = mean_ci(
            EmpiricalDist.from_samples(dist.samples)
        )
        summary["mean"] = mean
        summary["ci95_half_width"] = half
    return summary, dist


def _finish(args, manifest: dict, values: np.ndarray, cap: int, summary: dict) -> int:
    records = _records(values, cap, args.seed)
    manifest["records"] = len(records)
    manifest["censored"] = int(summary["censored"])
    manifest["wall_time_s"] = round(time.perf_counter() - manifest.pop("_t0"), 3)
    _emit(args, manifest, records, summary)
    frac = summary["censored"] / max(1, summary["trials"])
    if frac > CENSOR_LIMIT:
        print(f"error: censoring rate {frac:.4f} exceeds {CENSOR_LIMIT}", file=sys.stderr)
        return 3
    return 0


def _manifest(args, subcommand: str, **params) -> dict:
    man = {
        "tool": "cubewalks",
        "version": __version__,
        "backend": BACKEND,
        "algorithm_id": ALGORITHM_ID,
        "subcommand": subcommand,
    }
    man.update(params)
    man["_t0"] = time.perf_counter()
    return man


def _cmd_selfint(args) -> int:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    cap = args.cap or default_selfint_cap(args.n)
    man = _manifest(args, "selfint", n=args.n, trials=args.trials, seed=args.seed,
                    cap=cap, jobs=args.jobs)
    values, twostep = samplers.sample_selfint(args.n, args.trials, args.seed, cap, args.jobs)
    summary, dist = _base_summary(values, cap)
    summary["frac_two_step"] = float(np.mean(twostep[values >= 0])) if np.any(values >= 0) else 0.0
    if summary["censored"] == 0:
        summary["ks_exp1_scaled"] = ks_exp1(
            EmpiricalDist.from_samples(values.astype(float) / args.n)
        )
    return _finish(args, man, values, cap, summary)


def _cmd_gamma_l(args) -> int:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    _check(args.l >= 1, "l must be >= 1")
    cap = args.cap or 64 * args.n**args.l
    man = _manifest(args, "gamma-l", n=args.n, l=args.l, trials=args.trials,
                    seed=args.seed, cap=cap)
    values = samplers.sample_gamma_l(args.n, args.l, args.trials, args.seed, cap)
    summary, _ = _base_summary(values, cap)
    return _finish(args, man, values, cap, summary)


def _cmd_enumerate_jl(args) -> int:
    _check(args.n >= 1, "n must be >= 1")
    _check(args.l >= 1, "l must be >= 1")
    try:
        if args.certificate:
            count = 0
            path = _resolve_out(args.certificate)
            with open(path, "w") as fh:
                for word in iter_jl(args.n, args.l):
                    fh.write(" ".join(map(str, word)) + "\n")
                    count += 1
                fh.write(f"count {count}\n")
        else:
            count = enumerate_jl(args.n, args.l)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(f"count={count}")
    return 0


def _cmd_meeting(args) -> int:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    cap = args.cap or default_meeting_cap(args.n)
    man = _manifest(args, "meeting", n=args.n, trials=args.trials, seed=args.seed,
                    cap=cap, jobs=args.jobs)
    values = samplers.sample_meeting(args.n, args.trials, args.seed, cap, args.jobs)
    summary, _ = _base_summary(values, cap)
    if args.n > 1 and np.any(values >= 0):
        scale = args.n * math.log(args.n)
        summary["median_over_n_log_n"] = float(np.median(values[values >= 0]) / scale)
    return _finish(args, man, values, cap, summary)


def _cmd_couple_distance(args) -> int:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    cap = args.cap or default_meeting_cap(args.n)
    man = _manifest(args, "couple-distance", n=args.n, trials=args.trials,
                    seed=args.seed, cap=cap, jobs=args.jobs)
    values, violations = samplers.sample_couple_distance(
        args.n, args.trials, args.seed, cap, args.jobs
    )
    summary, _ = _base_summary(values, cap)
    summary["monotonicity_violations"] = int(violations)
    return _finish(args, man, values, cap, summary)


def _path_config(args) -> PathReturnConfig:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    _check(0 < args.gamma < 1, "gamma must be in (0, 1)")
    try:
        return PathReturnConfig(
            n=args.n,
            gamma=args.gamma,
            walk_kind=_walk_kind(args.walk),
            cap=args.cap,
            trials=args.trials,
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _cmd_path_return(args) -> int:
    config = _path_config(args)
    cap = config.effective_cap
    man = _manifest(args, "path-return", n=args.n, gamma=args.gamma, walk=args.walk,
                    path_length=config.path_length, trials=args.trials,
                    seed=args.seed, cap=cap, delta=DEFAULT_DELTA, jobs=args.jobs)
    values, vsizes = samplers.sample_path_returns(config, args.jobs)
    summary, _ = _base_summary(values, cap)
    summary["mean_path_set_size"] = float(np.mean(vsizes))
    return _finish(args, man, values, cap, summary)


def _cmd_beta(args) -> int:
    config = _path_config(args)
    cap = config.effective_cap
    _check(args.pilot_trials >= 500, "pilot needs at least 500 trials")
    man = _manifest(args, "beta", n=args.n, gamma=args.gamma, walk=args.walk,
                    path_length=config.path_length, trials=args.trials,
                    pilot_trials=args.pilot_trials, seed=args.seed, cap=cap,
                    jobs=args.jobs)
    try:
        estimate = estimate_beta(config, args.pilot_trials)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    values, _ = samplers.sample_path_returns(config, args.jobs)
    summary, _ = _base_summary(values, cap)
    summary["beta_hat"] = estimate.beta_hat
    summary["pilot_trials"] = estimate.pilot_trials
    if summary["censored"] == 0:
        summary["ks_exp1_scaled"] = ks_exp1(
            EmpiricalDist.from_samples(values.astype(float) / estimate.beta_hat)
        )
    return _finish(args, man, values, cap, summary)


def _cmd_eta_visit(args) -> int:
    config = _path_config(args)
    cap = config.effective_cap
    man = _manifest(args, "eta-visit", n=args.n, gamma=args.gamma, walk=args.walk,
                    path_length=config.path_length, trials=args.trials,
                    seed=args.seed, cap=cap, eta="all-minus", jobs=args.jobs)
    try:
        values = samplers.sample_eta_visits(config, all_minus(args.n), args.jobs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    summary, _ = _base_summary(values, cap)
    return _finish(args, man, values, cap, summary)


def _cmd_hitting(args) -> int:
    _check(1 <= args.n <= MAX_DIM, f"n must be in [1, {MAX_DIM}]")
    _check(0 < args.gamma < 1, "gamma must be in (0, 1)")
    cap = args.cap or default_theta_cap(args.n, args.gamma)
    man = _manifest(args, "hitting", n=args.n, gamma=args.gamma, walk=args.walk,
                    trials=args.trials, seed=args.seed, cap=cap, jobs=args.jobs)
    values, start_in = samplers.sample_thetas(
        args.n, args.gamma, args.trials, args.seed,
        _walk_kind(args.walk), cap, jobs=args.jobs,
    )
    summary, dist = _base_summary(values, cap)
    scale = args.n**args.gamma
    outside = start_in == 0
    for t in (0.5, 1.0, 2.0):
        thr = scale * t
        mask = values.astype(float) > thr
        summary[f"survival_t{t:g}"] = float(np.mean(mask | (values < 0)))
        if np.any(outside):
            sub = values[outside]
            summary[f"survival_t{t:g}_start_outside"] = float(
                np.mean((sub.astype(float) > thr) | (sub < 0))
            )
    summary["frac_start_in_set"] = float(np.mean(start_in))
    return _finish(args, man, values, cap, summary)


def _add_common(p, trials_default=1000, gamma=False, walk=False, jobs=True):
    p.add_argument("--n", type=int, required=True, help="hypercube dimension")
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--cap", type=int, default=None, help="censoring cap override")
    if gamma:
        p.add_argument("--gamma", type=float, default=0.5)
    if walk:
        p.add_argument("--walk", choices=["periodic", "aperiodic"], default="periodic")
    if jobs:
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes (records are schedule-independent)")
    p.add_argument("--out", default=None,
                   help="output file (default stdout; CUBEWALKS_OUT_DIR prefixes relative paths)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubewalks",
        description="Stopping-time experiments for random walks on the hypercube",
    )
    parser.add_argument("--version", action="version", version=f"cubewalks {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("selfint", help="first self-intersection of the periodic walk")
    _add_common(p)
    p.set_defaults(func=_cmd_selfint)

    p = sub.add_parser("gamma-l", help="first 2l-step return time")
    p.add_argument("--l", type=int, required=True)
    _add_common(p, jobs=False)
    p.set_defaults(func=_cmd_gamma_l)

    p = sub.add_parser("enumerate-jl", help="exhaustive return-word count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--certificate", default=None, help="write member words + count here")
    p.set_defaults(func=_cmd_enumerate_jl)

    p = sub.add_parser("meeting", help="meeting time of coupled lazy walks")
    _add_common(p)
    p.set_defaults(func=_cmd_meeting)

    p = sub.add_parser("couple-distance", help="coupled distance absorption with monotonicity audit")
    _add_common(p)
    p.set_defaults(func=_cmd_couple_distance)

    p = sub.add_parser("path-return", help="first return to the walk's initial path")
    _add_common(p, trials_default=2000, gamma=True, walk=True)
    p.set_defaults(func=_cmd_path_return)

    p = sub.add_parser("beta", help="e^-1 survival quantile of the path-return time")
    _add_common(p, trials_default=5000, gamma=True, walk=True)
    p.add_argument("--pilot-trials", type=int, default=DEFAULT_PILOT)
    p.set_defaults(func=_cmd_beta)

    p = sub.add_parser("eta-visit", help="first visit to V of the eta-started coupled walk")
    _add_common(p, trials_default=2000, gamma=True, walk=True)
    p.set_defaults(func=_cmd_eta_visit)

    p = sub.add_parser("hitting", help="hitting time of a fresh random set per trial")
    _add_common(p, trials_default=10000, gamma=True, walk=True)
    p.set_defaults(func=_cmd_hitting)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "trials", 1) < 1:
            raise CliError("trials must be >= 1")
        if getattr(args, "cap", None) is not None and args.cap < 1:
            raise CliError("cap must be >= 1")
        if getattr(args, "jobs", 1) < 1:
            raise CliError("jobs must be >= 1")
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
