"""
Sweeps of Pr(p) over a p_m grid for several decoding systems.

Every stratum is estimated once per system and reused at every grid point.
Stratum (w_q, w_m) of the code at position c draws from its own generator
seeded with [seed, c, w_q, w_m], so results do not depend on scheduling.

With wm_max="auto" each system gets the smallest measurement truncation whose
binomial tail over its own n_SM sites stays within tail_tolerance at the
largest grid point. Grid points whose reported tail is not below
TAIL_RATIO * Pr are logged as warnings.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Mapping, Sequence

import numpy as np
import polars as pl
from tqdm import tqdm

from ..errors import LdgmError
from .estimate import DEFAULT_EXHAUSTIVE_CAP, Stratum, combine_pr, estimate_pL
from .noise import ModelKind, NoiseModel, choose_truncation
from .system import DecodingSystem

logger = logging.getLogger(__name__)

TAIL_RATIO = 1e-3
DEFAULT_TAIL_TOLERANCE = 1e-6

RESULT_SCHEMA = {
    "code_id": pl.Utf8,
    "model": pl.Utf8,
    "p_m": pl.Float64,
    "p_q": pl.Float64,
    "pr_logical": pl.Float64,
    "ci_low": pl.Float64,
    "ci_high": pl.Float64,
    "truncation_tail": pl.Float64,
}
STRATUM_SCHEMA = {
    "code_id": pl.Utf8,
    "w_q": pl.Int64,
    "w_m": pl.Int64,
    "trials": pl.Int64,
    "failures": pl.Int64,
    "p_l": pl.Float64,
    "exact_flag": pl.Boolean,
}


@dataclass(frozen=True)
class SweepResult:
    seed: int
    model: str
    grid: tuple[float, ...]
    results: pl.DataFrame = field(repr=False)
    strata: pl.DataFrame = field(repr=False)
    # code_id -> measurement-weight truncation used for that system
    truncations: Mapping[str, int] = field(default_factory=dict)

    def curve(self, code_id: str) -> pl.DataFrame:
        return self.results.filter(pl.col("code_id") == code_id).sort("p_m")

    def write(self, out_dir: Path) -> None:
        self.results.write_csv(out_dir / "results.csv")
        self.strata.write_csv(out_dir / "strata.csv")


def run_sweep(
    systems: Mapping[str, DecodingSystem] | Sequence[DecodingSystem],
    grid: Sequence[float],
    model: ModelKind = "meas",
    trials: int = 10_000,
    wq_max: int = 4,
    wm_max: int | Literal["auto"] = "auto",
    seed: int = 0,
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    qubit_ratio: float = 5.0,
    workers: int = 1,
    progress: bool = True,
) -> SweepResult:
    if not isinstance(systems, Mapping):
        systems = {s.name: s for s in systems}
    grid = tuple(float(p) for p in grid)
    if not grid:
        raise LdgmError("Sweep grid is empty")
    wq_top = 0 if model == "meas" else wq_max
    truncations = {
        code_id: _measurement_truncation(system, wm_max, max(grid), tail_tolerance) for code_id, system in systems.items()
    }

    tasks: list[tuple[str, DecodingSystem, int, int, list[int]]] = []
    for c, (code_id, system) in enumerate(systems.items()):
        for w_q in range(min(wq_top, system.n_qubits) + 1):
            for w_m in range(truncations[code_id] + 1):
                tasks.append((code_id, system, w_q, w_m, [seed, c, w_q, w_m]))

    def run(task: tuple[str, DecodingSystem, int, int, list[int]]) -> tuple[str, Stratum]:
        code_id, system, w_q, w_m, stratum_seed = task
        return code_id, estimate_pL(system, w_q, w_m, trials, seed=stratum_seed, exhaustive_cap=exhaustive_cap)

    logger.info("Sweep (%s): %d systems, %d strata, %d grid points", model, len(systems), len(tasks), len(grid))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        outcomes = list(tqdm(pool.map(run, tasks), total=len(tasks), desc="Strata", unit="stratum", disable=not progress))

    by_code: dict[str, dict[tuple[int, int], Stratum]] = {code_id: {} for code_id in systems}
    for code_id, stratum in outcomes:
        by_code[code_id][(stratum.w_q, stratum.w_m)] = stratum

    result_rows = []
    stratum_rows = []
    for code_id, system in systems.items():
        strata = by_code[code_id]
        for (w_q, w_m), stratum in sorted(strata.items()):
            est = stratum.estimate
            stratum_rows.append(
                {
                    "code_id": code_id,
                    "w_q": w_q,
                    "w_m": w_m,
                    "trials": est.trials,
                    "failures": est.failures,
                    "p_l": est.rate,
                    "exact_flag": est.exact,
                }
            )
        heavy_tails = []
        for p_m in grid:
            noise = NoiseModel(model, p_m, qubit_ratio)
            pr = combine_pr(strata, noise, system.n_qubits, system.n_sm)
            if pr.tail > tail_tolerance and pr.tail >= TAIL_RATIO * pr.pr:
                heavy_tails.append(p_m)
            result_rows.append(
                {
                    "code_id": code_id,
                    "model": model,
                    "p_m": p_m,
                    "p_q": noise.p_q,
                    "pr_logical": pr.pr,
                    "ci_low": pr.ci_low,
                    "ci_high": pr.ci_high,
                    "truncation_tail": pr.tail,
                }
            )
        if heavy_tails:
            logger.warning(
                "%s: truncation tail is not below %g x Pr at p_m = %s; raise wm_max or use 'auto'",
                code_id,
                TAIL_RATIO,
                ", ".join(f"{p:.3g}" for p in heavy_tails),
            )

    results = pl.DataFrame(result_rows, schema=RESULT_SCHEMA)
    strata_df = pl.DataFrame(stratum_rows, schema=STRATUM_SCHEMA)
    return SweepResult(seed=seed, model=model, grid=grid, results=results, strata=strata_df, truncations=truncations)


def _measurement_truncation(system: DecodingSystem, wm_max: int | str, p_top: float, tol: float) -> int:
    if wm_max == "auto":
        W = choose_truncation(system.n_sm, p_top, tol)
        logger.info("%s: wm_max=auto -> %d (tail <= %g at p_m=%g)", system.name, W, tol, p_top)
        return W
    if int(wm_max) < 0:
        raise LdgmError(f"wm_max must be >= 0 or 'auto', got {wm_max}")
    return min(int(wm_max), system.n_sm)


def ratio_to_baseline(result: SweepResult, code_id: str, baseline_id: str) -> np.ndarray:
    """pr_logical(code) / pr_logical(baseline) along the grid."""
    code = result.curve(code_id)["pr_logical"].to_numpy()
    base = result.curve(baseline_id)["pr_logical"].to_numpy()
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(base > 0, code / base, np.nan)
