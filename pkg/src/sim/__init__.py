from .estimate import Estimate, PrEstimate, Stratum, combine_pr, direct_mc, estimate_pL
from .noise import NoiseModel, binomial_weight, choose_truncation, parse_grid, tail_mass
from .sampling import enumerate_patterns, pattern_count, sample_masks, sample_pauli_batch, sample_weighted_error
from .sweep import SweepResult, ratio_to_baseline, run_sweep
from .system import DecodingSystem, build_system, run_batch, run_trial

__all__ = [
    "DecodingSystem",
    "Estimate",
    "NoiseModel",
    "PrEstimate",
    "Stratum",
    "SweepResult",
    "binomial_weight",
    "build_system",
    "choose_truncation",
    "combine_pr",
    "direct_mc",
    "enumerate_patterns",
    "estimate_pL",
    "parse_grid",
    "pattern_count",
    "ratio_to_baseline",
    "run_batch",
    "run_sweep",
    "run_trial",
    "sample_masks",
    "sample_pauli_batch",
    "sample_weighted_error",
    "tail_mass",
]
