import importlib
import json

import polars as pl
import pytest

from src.cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, resolve_sm
from src.errors import LdgmError
from src.sim.noise import choose_truncation
from src.utils.paths import FIXTURE_DIR


def run(tmp_path, *argv):
    return main(["--out", str(tmp_path), *argv])


def test_resolve_sm_variants():
    name, gen, declared = resolve_sm("rep:24:5")
    assert gen.shape == (24, 120) and declared == (120, 24, 5)
    name, gen, declared = resolve_sm("h6x15")
    assert name == "h6x15" and gen.shape == (24, 60) and declared == (60, 24, 7)
    assert resolve_sm("id:8")[1].shape == (8, 8)
    with pytest.raises(LdgmError):
        resolve_sm("rep:24")
    with pytest.raises(LdgmError):
        resolve_sm("no_such_fixture")


def test_verify_repetition(tmp_path):
    assert run(tmp_path, "verify", "rep:24:5") == EXIT_OK
    report = json.loads((tmp_path / "verify" / "verify_report.json").read_text())
    assert report[0]["n"] == 120 and report[0]["d"] == 5
    assert report[0]["improvement_factor"] == "1"
    assert report[0]["passed"]


def test_verify_fixture_path(tmp_path):
    assert run(tmp_path, "verify", str(FIXTURE_DIR / "h6x15.txt")) == EXIT_OK
    report = json.loads((tmp_path / "verify" / "verify_report.json").read_text())
    assert report[0]["d_max_bound"] == 7


def test_verify_declared_mismatch_fails(tmp_path):
    bad = tmp_path / "claims_too_much.txt"
    bad.write_text("N=1\nexpect=1,1,2\n1\n", encoding="utf-8")
    assert run(tmp_path, "verify", str(bad)) == EXIT_FAILED


def test_verify_corrupted_fixture(tmp_path):
    bad = tmp_path / "dup.txt"
    bad.write_text("N=4\nx^1+x^1\n", encoding="utf-8")
    assert run(tmp_path, "verify", str(bad)) == EXIT_USAGE


def test_verify_needs_a_target(tmp_path):
    assert run(tmp_path, "verify") == EXIT_USAGE


def test_verify_report_carries_manifest_hash(tmp_path):
    hashes = []
    for sub in ("first", "second"):
        assert run(tmp_path / sub, "verify", "rep:24:5") == EXIT_OK
        report = json.loads((tmp_path / sub / "verify" / "verify_report.json").read_text())
        manifest = json.loads((tmp_path / sub / "verify" / "manifest.json").read_text())
        assert len(report[0]["manifest_hash"]) == 64
        assert report[0]["manifest_hash"] == manifest["manifest_hash"]
        assert manifest["command"] == "verify" and manifest["arguments"]["target"] == "rep:24:5"
        hashes.append(manifest["manifest_hash"])
    assert hashes[0] == hashes[1]
    assert run(tmp_path / "third", "verify", "rep:24:3") == EXIT_OK
    other = json.loads((tmp_path / "third" / "verify" / "manifest.json").read_text())
    assert other["manifest_hash"] != hashes[0]


def test_encode_identity_keeps_weight_four(tmp_path):
    assert run(tmp_path, "encode", "--code", "rsc:5", "--sm", "id:24") == EXIT_OK
    report = json.loads((tmp_path / "encode" / "measured_set.json").read_text())
    assert report["max_weight"] == 4
    assert len(report["elements"]) == 24
    assert report["effective_distance"] == 1


def test_encode_fixture_weight_confined(tmp_path):
    assert run(tmp_path, "encode", "--code", "rsc:5", "--sm", "h2x5_1") == EXIT_OK
    report = json.loads((tmp_path / "encode" / "measured_set.json").read_text())
    assert report["max_weight"] <= 12
    assert report["sm_params"] == [60, 24, 7]


def test_encode_row_mismatch(tmp_path):
    assert run(tmp_path, "encode", "--code", "rsc:3", "--sm", "h2x5_1") == EXIT_USAGE


def test_encode_report_embeds_stabilizer_code(tmp_path):
    assert run(tmp_path, "encode", "--code", "rsc:5", "--sm", "id:24") == EXIT_OK
    out = tmp_path / "encode"
    report = json.loads((out / "measured_set.json").read_text())
    code = report["stabilizer_code"]
    assert code["n"] == 25 and code["k"] == 1
    assert len(code["generators"]) == 24
    assert all(len(g) == 25 for g in code["generators"])
    manifest = json.loads((out / "manifest.json").read_text())
    assert report["manifest_hash"] == manifest["manifest_hash"] and len(manifest["manifest_hash"]) == 64


def test_construct_trivial_code(tmp_path):
    argv = ["construct", "--nc", "1", "--nv", "1", "--ds", "1", "--lift", "1", "--seed", "0", "--name", "tiny"]
    assert run(tmp_path, *argv) == EXIT_OK
    out = tmp_path / "construct"
    report = json.loads((out / "report.json").read_text())
    assert (report["n"], report["k"], report["d"]) == (1, 1, 1)
    assert report["four_cycle_free"] and report["tanner_girth"] is None
    assert (out / "tiny.bits.txt").read_text() == "1\n"
    assert (out / "tiny.poly.txt").read_text().startswith("N=1\n")
    assert json.loads((out / "tiny.json").read_text())["rows"] == ["1"]


def test_construct_bad_degree_sequence(tmp_path):
    argv = ["construct", "--nc", "2", "--nv", "5", "--ds", "3,3", "--lift", "12"]
    assert run(tmp_path, *argv) == EXIT_USAGE


def test_construct_report_embeds_parity_check_and_hash(tmp_path):
    argv = ["construct", "--nc", "1", "--nv", "1", "--ds", "1", "--lift", "1", "--seed", "0", "--name", "tiny"]
    assert run(tmp_path, *argv) == EXIT_OK
    out = tmp_path / "construct"
    report = json.loads((out / "report.json").read_text())
    assert report["parity_check"] == {"rows": 0, "cols": 1, "row_strings": []}
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "construct"
    assert report["manifest_hash"] == manifest["manifest_hash"]


@pytest.mark.slow
def test_construct_two_by_five(tmp_path):
    argv = ["construct", "--nc", "2", "--nv", "5", "--ds", "3", "--lift", "12", "--seed", "0", "--restarts", "3"]
    assert run(tmp_path, *argv) == EXIT_OK
    report = json.loads((tmp_path / "construct" / "report.json").read_text())
    assert (report["n"], report["k"]) == (60, 24)
    assert report["d"] <= report["d_max_bound"] == 7


def test_simulate_rejects_empty_grid(tmp_path):
    assert run(tmp_path, "simulate", "--grid", "0.01:0.1:0") == EXIT_USAGE


def test_simulate_writes_results_and_manifest(tmp_path, monkeypatch):
    cli = importlib.import_module("src.cli.main")

    monkeypatch.setattr(cli, "load_config", lambda experiment=None: {
        "run": {"seed": 4, "code": "rsc:3", "fixtures": [], "include_repetition": True, "repetition_factor": 3},
        "simulation": {"model": "meas", "grid": "0.01:0.05:2", "trials": 50, "wm_max": 1, "wq_max": 0},
        "decoders": {"quantum_decoder_t": 1},
    })
    assert run(tmp_path, "simulate", "--workers", "1") == EXIT_OK
    out = tmp_path / "simulate"
    results = pl.read_csv(out / "results.csv")
    assert results["code_id"].unique().to_list() == ["rep:8:3"]
    assert results.height == 2
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 4 and len(manifest["manifest_hash"]) == 64
    assert set(manifest["versions"]) >= {"numpy", "scipy", "polars", "networkx", "package"}
    assert manifest["truncations"] == {"rep:8:3": 1}


def test_simulate_auto_truncation_recorded_per_code(tmp_path, monkeypatch):
    cli = importlib.import_module("src.cli.main")

    monkeypatch.setattr(cli, "load_config", lambda experiment=None: {
        "run": {"seed": 4, "code": "rsc:3", "fixtures": [], "include_repetition": True, "repetition_factor": 3},
        "simulation": {"model": "meas", "grid": "0.01:0.05:2", "trials": 50, "wm_max": "auto", "wq_max": 0},
        "decoders": {"quantum_decoder_t": 1},
    })
    assert run(tmp_path, "simulate", "--workers", "1") == EXIT_OK
    manifest = json.loads((tmp_path / "simulate" / "manifest.json").read_text())
    assert manifest["config"]["wm_max"] == "auto"
    assert manifest["truncations"] == {"rep:8:3": choose_truncation(24, 0.05, manifest["config"]["tail_tolerance"])}
