"""\
Command-line front end for LDGM syndrome-measurement codes.

Usage:
    python -m src.cli verify --all
    python -m src.cli verify h6x15
    python -m src.cli verify rep:24:5
    python -m src.cli construct --nc 2 --nv 5 --ds 3 --lift 12 --seed 7
    python -m src.cli encode --code rsc:5 --sm h2x5_1
    python -m src.cli --config meas_only simulate --seed 42
    python -m src.cli --config combined simulate --grid 0.001:0.05:7,log
    python -m src.cli --config validation validate

Every command writes under --out (default: outputs/). Exit status is 0 on
success, 1 when a verification or cross-check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
from pathlib import Path
from typing import Any, Iterable

import networkx as nx
import numpy as np
import polars as pl
import scipy
from pydantic import ValidationError
from tqdm import tqdm

from .. import __version__
from ..algebra.bitmatrix import BitMatrix
from ..errors import InfeasibleError, LdgmError, RankDeficientError
from ..peg.catalogue import FIXTURES, fixture_path
from ..peg.lifting import expand, has_four_cycle, qc_peg_shifts, tanner_girth
from ..peg.polymatrix import format_poly_matrix, load_poly_file
from ..peg.protograph import DegreeSequence, peg_protograph
from ..schemas import (
    BitMatrixJson,
    CommandManifest,
    ConstructReport,
    MeasuredElementJson,
    MeasuredSetReport,
    RunConfig,
    RunManifest,
    SmCodeJson,
    StabilizerCodeJson,
    VerifyReport,
)
from ..sim.estimate import direct_mc
from ..sim.noise import NoiseModel, parse_grid
from ..sim.sweep import SweepResult, run_sweep
from ..sim.system import DecodingSystem, build_system
from ..smcode.code import (
    SmCode,
    d_max_bound,
    identity_sm_code,
    improvement_factor,
    repetition_equivalent,
    repetition_sm_code,
)
from ..smcode.measured import audit_records, encode_stabilizers, weight_histogram, worst_effective_distance
from ..stabilizer.lookup import build_quantum_lookup_decoder
from ..stabilizer.surface import parse_code_spec
from ..utils.config_loader import load_config
from ..utils.paths import FIXTURE_DIR, OUTPUT_DIR, ensure_dirs

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CONFIG_SECTIONS = ("run", "simulation", "decoders", "construction", "validation")
BANNER = "=" * 60


# ======================================================================
# Config and code resolution
# ======================================================================


def build_run_config(experiment: str | None, overrides: dict[str, Any]) -> RunConfig:
    """Flattens the YAML sections, applies non-None flag overrides, validates."""
    cfg = load_config(experiment)
    merged: dict[str, Any] = {}
    for section in CONFIG_SECTIONS:
        merged.update(cfg.get(section) or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**merged)


def resolve_sm(spec: str, fixture_dir: Path = FIXTURE_DIR) -> tuple[str, BitMatrix, tuple[int, int, int] | None]:
    """'rep:l:r', 'id:l', a shipped fixture name, or a path to a polynomial-matrix file."""
    kind, _, rest = spec.partition(":")
    if kind == "rep":
        parts = rest.split(":")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise LdgmError(f"Repetition spec {spec!r} must look like 'rep:<l>:<r>'")
        l, r = int(parts[0]), int(parts[1])
        return spec, repetition_sm_code(l, r).gen, (l * r, l, r)
    if kind == "id" and rest.isdigit():
        return spec, identity_sm_code(int(rest)).gen, (int(rest), int(rest), 1)
    path = fixture_path(spec, fixture_dir) if spec in FIXTURES else Path(spec)
    if not path.exists():
        raise LdgmError(f"No fixture or file named {spec!r}")
    parsed = load_poly_file(path)
    return parsed.name, expand(parsed.lift), parsed.expect


def _girth_or_none(M: BitMatrix) -> int | None:
    g = tanner_girth(M)
    return None if g == float("inf") else int(g)


def _versions() -> dict[str, str]:
    return {
        "package": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "polars": pl.__version__,
        "networkx": nx.__version__,
    }


def _write_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _command_manifest(command: str, args: argparse.Namespace, cfg: RunConfig | None = None) -> CommandManifest:
    """Hashes the arguments (minus output location and verbosity), versions and config of a run."""
    arguments = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "verbose")}
    return CommandManifest(command=command, arguments=arguments, versions=_versions(), config=cfg).with_hash()


# ======================================================================
# verify
# ======================================================================


def verify_one(name: str, gen: BitMatrix, declared: tuple[int, int, int] | None) -> VerifyReport:
    try:
        sm = SmCode(gen, name=name)
    except RankDeficientError as exc:
        logger.error("%s: %s", name, exc)
        return VerifyReport(
            name=name,
            n=gen.cols,
            k=0,
            d=0,
            declared=list(declared) if declared else None,
            column_weights=[int(w) for w in gen.col_weights()],
            row_weights=[int(w) for w in gen.row_weights()],
            d_max_bound=0,
            improvement_factor="n/a",
            repetition_equivalent=0,
            passed=False,
        )
    n, k, d = sm.params()
    bound = d_max_bound(k, n, max(sm.max_column_weight, 1))
    passed = d <= bound and (declared is None or tuple(declared) == (n, k, d))
    return VerifyReport(
        name=name,
        n=n,
        k=k,
        d=d,
        declared=list(declared) if declared else None,
        column_weights=list(sm.column_weights),
        row_weights=[int(w) for w in gen.row_weights()],
        d_max_bound=bound,
        tanner_girth=_girth_or_none(gen),
        improvement_factor=str(improvement_factor(n, d, k)),
        repetition_equivalent=repetition_equivalent(sm)[0],
        passed=passed,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    fixture_dir = Path(args.fixtures)
    targets = list(FIXTURES) if args.all else ([args.target] if args.target else [])
    if not targets:
        raise LdgmError("verify needs a fixture path, a repetition spec, or --all")

    manifest = _command_manifest("verify", args)
    out_dir = ensure_dirs(Path(args.out), "verify") / "verify"
    reports = []
    print(BANNER)
    for spec in tqdm(targets, desc="Verifying", unit="code", disable=len(targets) < 2):
        name, gen, declared = resolve_sm(spec, fixture_dir)
        report = verify_one(name, gen, declared).model_copy(update={"manifest_hash": manifest.manifest_hash})
        reports.append(report)
        mark = "✅" if report.passed else "❌"
        print(f"{mark} {name}: [{report.n},{report.k},{report.d}] (declared {report.declared}, d_max {report.d_max_bound})")
    print(BANNER)
    _write_json(out_dir / "verify_report.json", [r.model_dump() for r in reports])
    _write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# ======================================================================
# construct
# ======================================================================


def cmd_construct(args: argparse.Namespace, cfg: RunConfig) -> int:
    n_c, n_v, N = args.nc, args.nv, args.lift
    ds = DegreeSequence.parse(args.ds, count=n_v)
    if len(ds) != n_v:
        raise InfeasibleError(f"--ds has {len(ds)} entries for {n_v} symbol nodes")
    try:
        dc = [int(v) for v in args.dc.split(",")] if args.dc else None
    except ValueError:
        raise InfeasibleError(f"--dc must be a comma list of integers, got {args.dc!r}") from None
    seed = cfg.seed if cfg.seed is not None else 0
    name = args.name or f"peg_{n_c}x{n_v}_N{N}"

    best = None
    tried = 0
    for r in tqdm(range(cfg.restarts), desc="Restarts", unit="seed"):
        tried += 1
        proto = peg_protograph(n_c, n_v, ds, seed=seed + r, dc=dc, max_multiplicity=N)
        lift = qc_peg_shifts(proto, N, seed=seed + r)
        try:
            sm = SmCode(expand(lift), name=name)
        except RankDeficientError:
            logger.info("Seed %d: lifted generator is rank deficient, skipping", seed + r)
            continue
        bound = d_max_bound(sm.l, sm.n_sm, max(sm.max_column_weight, 1))
        logger.info("Seed %d: [%d,%d,%d] (d_max %d)", seed + r, *sm.params(), bound)
        if best is None or sm.distance > best[2].distance:
            best = (seed + r, lift, sm, bound)
        if sm.distance >= bound:
            break
    if best is None:
        raise InfeasibleError(f"No full-rank lift found in {tried} restarts")

    best_seed, lift, sm, bound = best
    manifest = _command_manifest("construct", args, cfg)
    out_dir = ensure_dirs(Path(args.out), "construct") / "construct"
    n, k, d = sm.params()
    (out_dir / f"{name}.poly.txt").write_text(format_poly_matrix(lift, expect=(n, k, d)), encoding="utf-8")
    (out_dir / f"{name}.bits.txt").write_text(sm.gen.to_text(), encoding="utf-8")
    _write_json(out_dir / f"{name}.json", SmCodeJson(**sm.to_json()).model_dump())
    report = ConstructReport(
        name=name,
        n_c=n_c,
        n_v=n_v,
        lifting_factor=N,
        symbol_degrees=list(ds.values),
        check_degrees=lift.proto.row_sums,
        protograph=lift.proto.b.tolist(),
        seed=best_seed,
        restarts_tried=tried,
        n=n,
        k=k,
        d=d,
        d_max_bound=bound,
        four_cycle_free=not has_four_cycle(lift),
        tanner_girth=_girth_or_none(sm.gen),
        parity_check=BitMatrixJson(**sm.parity.to_json()),
        manifest_hash=manifest.manifest_hash,
    )
    _write_json(out_dir / "report.json", report.model_dump())
    _write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"))

    print(BANNER)
    print(f"✅ {name}: [{n},{k},{d}] from seed {best_seed} after {tried} restart(s); d_max bound {bound}")
    print(f"   check degrees {report.check_degrees}, four-cycle free: {report.four_cycle_free}")
    print(BANNER)
    return EXIT_OK


# ======================================================================
# encode
# ======================================================================


def cmd_encode(args: argparse.Namespace, cfg: RunConfig) -> int:
    code_spec = args.code or cfg.code
    code = parse_code_spec(code_spec)
    name, gen, _ = resolve_sm(args.sm, Path(args.fixtures))
    sm = SmCode(gen, name=name)
    ms = encode_stabilizers(code, sm)
    d = int(code_spec.partition(":")[2])
    hist = weight_histogram(ms)
    manifest = _command_manifest("encode", args, cfg)
    report = MeasuredSetReport(
        code=code_spec,
        stabilizer_code=StabilizerCodeJson(**code.to_json()),
        sm_code=name,
        sm_params=list(sm.params()),
        max_weight=max(hist),
        weight_histogram=hist,
        effective_distance=worst_effective_distance(ms, d),
        elements=[MeasuredElementJson(**rec) for rec in audit_records(ms)],
        manifest_hash=manifest.manifest_hash,
    )
    out_dir = ensure_dirs(Path(args.out), "encode") / "encode"
    _write_json(out_dir / "measured_set.json", report.model_dump())
    _write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"))

    print(BANNER)
    print(f"{code_spec} + {name}: {ms.n_sm} measured elements, max weight {report.max_weight}")
    print("   weight histogram: " + ", ".join(f"{w}: {c}" for w, c in hist.items()))
    print(f"   worst-case effective distance under hook errors: {report.effective_distance}")
    print(BANNER)
    return EXIT_OK


# ======================================================================
# simulate / validate
# ======================================================================


def build_systems(cfg: RunConfig, fixture_dir: Path) -> dict[str, DecodingSystem]:
    code = parse_code_spec(cfg.code)
    q_dec = build_quantum_lookup_decoder(code, cfg.quantum_decoder_t, max_entries=cfg.quantum_table_cap)
    specs = list(cfg.fixtures or [])
    if cfg.include_repetition:
        specs.append(f"rep:{code.l}:{cfg.repetition_factor}")
    if not specs:
        raise LdgmError("No SM codes selected (empty fixture list and repetition disabled)")

    systems: dict[str, DecodingSystem] = {}
    for spec in specs:
        name, gen, _ = resolve_sm(spec, fixture_dir)
        systems[name] = build_system(
            name,
            code,
            SmCode(gen, name=name),
            sm_t=cfg.sm_decoder_t,
            q_dec=q_dec,
            sm_max_entries=cfg.sm_table_cap,
        )
    return systems


def _manifest(command: str, cfg: RunConfig, grid: Iterable[float], sweep: SweepResult) -> RunManifest:
    return RunManifest(
        command=command,
        fixtures=list(sweep.truncations),
        seed=int(cfg.seed),
        grid=[float(p) for p in grid],
        model=cfg.model,
        versions=_versions(),
        config=cfg,
        truncations=dict(sweep.truncations),
    ).with_hash()


def cmd_simulate(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.seed is None:
        raise LdgmError("simulate needs a seed (--seed or run.seed in the config)")
    grid = parse_grid(cfg.grid)
    systems = build_systems(cfg, Path(args.fixtures))
    result = run_sweep(
        systems,
        grid,
        model=cfg.model,
        trials=cfg.trials,
        wq_max=cfg.wq_max,
        wm_max=cfg.wm_max,
        seed=cfg.seed,
        tail_tolerance=cfg.tail_tolerance,
        exhaustive_cap=cfg.exhaustive_cap,
        qubit_ratio=cfg.qubit_ratio,
        workers=cfg.workers,
    )
    out_dir = ensure_dirs(Path(args.out), "simulate") / "simulate"
    result.write(out_dir)
    manifest = _manifest("simulate", cfg, grid, result)
    _write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"))

    print(BANNER)
    print(f"Model {cfg.model}, {len(grid)} grid points, seed {cfg.seed}, manifest {manifest.manifest_hash[:12]}")
    for code_id in systems:
        curve = result.curve(code_id)
        lo, hi = curve.row(0, named=True), curve.row(-1, named=True)
        print(f"   {code_id:>10}: Pr({lo['p_m']:.3g}) = {lo['pr_logical']:.3e}   Pr({hi['p_m']:.3g}) = {hi['pr_logical']:.3e}")
    print(f"✅ Results written to {out_dir}")
    print(BANNER)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.seed is None:
        raise LdgmError("validate needs a seed (--seed or run.seed in the config)")
    points = sorted(cfg.validation_points)
    if not points:
        raise LdgmError("No validation points configured")
    systems = build_systems(cfg, Path(args.fixtures))
    sweep = run_sweep(
        systems,
        points,
        model=cfg.model,
        trials=cfg.trials,
        wq_max=cfg.wq_max,
        wm_max=cfg.wm_max,
        seed=cfg.seed,
        tail_tolerance=cfg.tail_tolerance,
        exhaustive_cap=cfg.exhaustive_cap,
        qubit_ratio=cfg.qubit_ratio,
        workers=cfg.workers,
    )

    rows = []
    for c, (code_id, system) in enumerate(systems.items()):
        curve = sweep.curve(code_id)
        for k, row in enumerate(curve.iter_rows(named=True)):
            noise = NoiseModel(cfg.model, row["p_m"], cfg.qubit_ratio)
            direct = direct_mc(system, noise, cfg.direct_trials, seed=[cfg.seed, 1_000 + c, k])
            d_lo, d_hi = direct.ci
            agree = row["ci_low"] <= d_hi and d_lo <= row["ci_high"]
            rows.append(
                {
                    "code_id": code_id,
                    "p_m": row["p_m"],
                    "pr_logical": row["pr_logical"],
                    "ci_low": row["ci_low"],
                    "ci_high": row["ci_high"],
                    "direct_rate": direct.rate,
                    "direct_ci_low": d_lo,
                    "direct_ci_high": d_hi,
                    "agree": agree,
                }
            )

    out_dir = ensure_dirs(Path(args.out), "validate") / "validate"
    table = pl.DataFrame(rows)
    table.write_csv(out_dir / "validation.csv")
    sweep.strata.write_csv(out_dir / "strata.csv")
    manifest = _manifest("validate", cfg, points, sweep)
    _write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"))

    print(BANNER)
    for row in rows:
        mark = "✅" if row["agree"] else "❌"
        print(
            f"{mark} {row['code_id']} p_m={row['p_m']:.3g}: stratified {row['pr_logical']:.3e} "
            f"[{row['ci_low']:.3e}, {row['ci_high']:.3e}] vs direct {row['direct_rate']:.3e} "
            f"[{row['direct_ci_low']:.3e}, {row['direct_ci_high']:.3e}]"
        )
    print(BANNER)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAILED


# ======================================================================
# Entry point
# ======================================================================


def parse_args(argv: Iterable[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Build, verify and simulate LDGM syndrome-measurement codes.")
    parser.add_argument("--config", default=None, help="Config overlay name under config/ (e.g. meas_only, combined).")
    parser.add_argument("--out", default=str(OUTPUT_DIR), help="Output directory.")
    parser.add_argument("--fixtures", default=str(FIXTURE_DIR), help="Directory holding the polynomial-matrix fixtures.")
    parser.add_argument("--verbose", action="store_true", help="Debug logging.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Report [n, k, d] of SM codes and check declared parameters.")
    p.add_argument("target", nargs="?", help="Fixture name, polynomial-matrix path, or rep:<l>:<r>.")
    p.add_argument("--all", action="store_true", help="Verify every shipped fixture.")

    p = sub.add_parser("construct", help="PEG protograph + QC-PEG lift + expansion.")
    p.add_argument("--nc", type=int, required=True, help="Check nodes of the protograph.")
    p.add_argument("--nv", type=int, required=True, help="Symbol nodes of the protograph.")
    p.add_argument("--ds", required=True, help="Symbol degrees: one value (uniform) or a comma list.")
    p.add_argument("--dc", default=None, help="Optional check degrees as a comma list.")
    p.add_argument("--lift", type=int, required=True, help="Lifting factor N.")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--name", default=None)

    p = sub.add_parser("encode", help="Measured stabilizer elements for a surface code and an SM code.")
    p.add_argument("--code", default=None, help="Stabilizer code, e.g. rsc:5.")
    p.add_argument("--sm", required=True, help="Fixture name, polynomial-matrix path, rep:<l>:<r> or id:<l>.")

    for name, help_text in (
        ("simulate", "Stratified Monte Carlo sweep over the p_m grid."),
        ("validate", "Stratified estimate against direct Monte Carlo."),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--grid", default=None, help="start:stop:points[,log]")
        p.add_argument("--trials", type=int, default=None, help="Trials per sampled stratum.")
        p.add_argument("--wq-max", dest="wq_max", type=int, default=None)
        p.add_argument("--wm-max", dest="wm_max", default=None, help="Integer or 'auto'.")
        p.add_argument("--model", choices=["meas", "combined"], default=None)
        p.add_argument("--qubit-ratio", dest="qubit_ratio", type=float, default=None)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--code", default=None, help="Stabilizer code, e.g. rsc:5.")
        if name == "validate":
            p.add_argument("--direct-trials", dest="direct_trials", type=int, default=None)

    return parser.parse_args(argv)


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    keys = ("seed", "grid", "trials", "wq_max", "wm_max", "model", "qubit_ratio", "workers", "code", "restarts", "direct_trials")
    out = {k: getattr(args, k, None) for k in keys}
    if out["wm_max"] is not None and out["wm_max"] != "auto":
        if not str(out["wm_max"]).isdigit():
            raise LdgmError(f"--wm-max must be an integer or 'auto', got {out['wm_max']!r}")
        out["wm_max"] = int(out["wm_max"])
    return out


def main(argv: Iterable[str] | None = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    try:
        if args.command == "verify":
            return cmd_verify(args)
        cfg = build_run_config(args.config, _overrides(args))
        if args.command == "construct":
            return cmd_construct(args, cfg)
        if args.command == "encode":
            return cmd_encode(args, cfg)
        if args.command == "simulate":
            return cmd_simulate(args, cfg)
        return cmd_validate(args, cfg)
    except (LdgmError, ValidationError, FileNotFoundError) as exc:
        logger.error("❌ %s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("❌ I/O error: %s", exc)
        return EXIT_USAGE
