"""Monte Carlo laboratory for random walks on the hypercube {-1,+1}^N:
spins, couplings, return words and the associated stopping times."""

from ._backend import BACKEND
from .rng import ALGORITHM_ID, RngStream, derive_trial_seed, derive_trial_seeds
from .vertex import MAX_DIM, Vertex, all_minus, all_plus, hamming, spin
from .walks import (
    Censored,
    CoupledPair,
    WalkEngine,
    WalkKind,
    coupled_step,
    distance,
    meeting_time,
)
from .returns import (
    ReturnDetector,
    enumerate_jl,
    f2l,
    first_self_intersection,
    g2l,
    h2l,
    iter_jl,
)
from .stopping import (
    BetaEstimate,
    PathReturnConfig,
    RandomSetMembership,
    ThetaSample,
    estimate_beta,
    sample_eta_visit,
    sample_path_return,
    sample_theta,
)
from .stats import EmpiricalDist, ks_exp1, ks_two_sample, mean_ci, survival

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_ID",
    "BACKEND",
    "BetaEstimate",
    "Censored",
    "CoupledPair",
    "EmpiricalDist",
    "MAX_DIM",
    "PathReturnConfig",
    "RandomSetMembership",
    "ReturnDetector",
    "RngStream",
    "ThetaSample",
    "Vertex",
    "WalkEngine",
    "WalkKind",
    "all_minus",
    "all_plus",
    "coupled_step",
    "derive_trial_seed",
    "derive_trial_seeds",
    "distance",
    "enumerate_jl",
    "estimate_beta",
    "f2l",
    "first_self_intersection",
    "g2l",
    "h2l",
    "hamming",
    "iter_jl",
    "ks_exp1",
    "ks_two_sample",
    "mean_ci",
    "meeting_time",
    "sample_eta_visit",
    "sample_path_return",
    "sample_theta",
    "spin",
    "survival",
]
