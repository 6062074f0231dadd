"""
Stratified (fixed-weight) failure estimates and their recombination.

p_L(w_q, w_m) is the failure rate given exactly w_q qubit errors and w_m
measurement flips. Summing p_L against the binomial weight probabilities
gives Pr(p); strata above the truncation contribute at most their mass,
which is reported as the tail and added to the upper confidence bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import binomtest

from ..errors import LdgmError, MissingStratumError
from .noise import NoiseModel, binomial_weight, tail_mass
from .sampling import enumerate_patterns, pattern_count, sample_masks, sample_pauli_batch
from .system import DecodingSystem, run_batch

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_CAP = 1_000_000
DEFAULT_BATCH = 4096
CONFIDENCE = 0.95

Seed = int | Sequence[int] | None


@dataclass(frozen=True)
class Estimate:
    trials: int
    failures: int
    exact: bool = False

    def __post_init__(self) -> None:
        if self.failures > self.trials or self.failures < 0:
            raise LdgmError(f"Failures {self.failures} outside [0, trials={self.trials}]")

    @property
    def rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0

    @cached_property
    def ci(self) -> tuple[float, float]:
        """95% interval: degenerate when exact, rule of three at zero failures, Wilson otherwise."""
        if self.exact or self.trials == 0:
            return self.rate, self.rate
        if self.failures == 0:
            return 0.0, min(1.0, 3.0 / self.trials)
        interval = binomtest(self.failures, self.trials).proportion_ci(confidence_level=CONFIDENCE, method="wilson")
        return float(interval.low), float(interval.high)


@dataclass(frozen=True)
class Stratum:
    w_q: int
    w_m: int
    estimate: Estimate

    @property
    def p_l(self) -> float:
        return self.estimate.rate


@dataclass(frozen=True)
class PrEstimate:
    pr: float
    ci_low: float
    ci_high: float
    tail: float


def estimate_pL(
    system: DecodingSystem,
    w_q: int,
    w_m: int,
    trials: int,
    seed: Seed = None,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    batch_size: int = DEFAULT_BATCH,
) -> Stratum:
    n, n_sm = system.n_qubits, system.n_sm
    if not 0 <= w_q <= n or not 0 <= w_m <= n_sm:
        raise LdgmError(f"Stratum ({w_q}, {w_m}) outside [0, {n}] x [0, {n_sm}]")
    if trials < 1:
        raise LdgmError(f"trials must be >= 1, got {trials}")

    count = pattern_count(n, w_q, n_sm, w_m)
    if count <= exhaustive_cap:
        failures = 0
        for qx, qz, meas in enumerate_patterns(n, w_q, n_sm, w_m):
            failures += int(run_batch(system, qx, qz, meas).sum())
        logger.debug("%s stratum (%d,%d): exact over %d patterns, %d failures", system.name, w_q, w_m, count, failures)
        return Stratum(w_q, w_m, Estimate(count, failures, exact=True))

    rng = np.random.default_rng(seed)
    failures = 0
    done = 0
    while done < trials:
        b = min(batch_size, trials - done)
        qx, qz = sample_pauli_batch(n, w_q, b, rng)
        meas = sample_masks(n_sm, w_m, b, rng)
        failures += int(run_batch(system, qx, qz, meas).sum())
        done += b
    logger.debug("%s stratum (%d,%d): %d/%d sampled failures", system.name, w_q, w_m, failures, trials)
    return Stratum(w_q, w_m, Estimate(trials, failures))


def combine_pr(
    strata: Mapping[tuple[int, int], Stratum],
    noise: NoiseModel,
    n_qubits: int,
    n_sm: int,
    wq_max: int | None = None,
    wm_max: int | None = None,
) -> PrEstimate:
    """Pr(p) = sum over strata of p_L(w_q, w_m) A_{w_q}(p_q) A_{w_m}(p_m), with its 95% band."""
    if not strata:
        raise MissingStratumError("No strata to combine")
    if noise.kind == "meas":
        wq_max = 0
    elif wq_max is None:
        wq_max = max(k[0] for k in strata)
    if wm_max is None:
        wm_max = max(k[1] for k in strata)

    p_q, p_m = noise.p_q, noise.p_m
    pr = lo = hi = 0.0
    for w_q in range(wq_max + 1):
        a_q = binomial_weight(n_qubits, w_q, p_q)
        for w_m in range(wm_max + 1):
            stratum = strata.get((w_q, w_m))
            if stratum is None:
                raise MissingStratumError(f"Stratum (w_q={w_q}, w_m={w_m}) is below the truncation but missing")
            a = a_q * binomial_weight(n_sm, w_m, p_m)
            low, high = stratum.estimate.ci
            pr += stratum.p_l * a
            lo += low * a
            hi += high * a

    tail_q = tail_mass(n_qubits, wq_max, p_q)
    tail_m = tail_mass(n_sm, wm_max, p_m)
    tail = tail_q + tail_m - tail_q * tail_m
    return PrEstimate(pr=min(pr, 1.0), ci_low=min(lo, 1.0), ci_high=min(hi + tail, 1.0), tail=tail)


def direct_mc(
    system: DecodingSystem,
    noise: NoiseModel,
    trials: int,
    seed: Seed = None,
    batch_size: int = DEFAULT_BATCH,
) -> Estimate:
    """Plain Monte Carlo with i.i.d. errors at the nominal rates."""
    if trials < 1:
        raise LdgmError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    n, n_sm = system.n_qubits, system.n_sm
    failures = 0
    done = 0
    while done < trials:
        b = min(batch_size, trials - done)
        meas = (rng.random((b, n_sm)) < noise.p_m).astype(np.uint8)
        hit = rng.random((b, n)) < noise.p_q
        labels = rng.integers(1, 4, size=(b, n), dtype=np.uint8) * hit
        failures += int(run_batch(system, labels & 1, labels >> 1, meas).sum())
        done += b
    return Estimate(trials, failures)
