"""Workbench: scenario runner, coverage harness, CLI exit codes."""

import json
import os
import subprocess
import sys

from twistkit.scenario import (BUNDLED, REQUIRED_OPS, run_bundle, scenario_run)


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([sys.executable, "-m", "twistkit.cli", *args],
                          capture_output=True, text=True, env=env)
    return proc


def test_bundled_scenarios_all_pass():
    report, ok, covered = run_bundle(seed=0)
    assert ok, report
    assert "result=fail" not in report


def test_coverage_harness():
    _, _, covered = run_bundle(seed=0)
    missing = REQUIRED_OPS - covered
    assert not missing, f"operations never exercised: {sorted(missing)}"


def test_scenario_failure_reports_computed_value():
    scen = {"name": "bad-expectation",
            "steps": [{"op": "build", "label": "H", "spec": {"fixture": "H"}},
                      {"op": "derivations", "algebra": "H", "expect_dim": 4}]}
    report, ok, _ = scenario_run(scen, seed=0)
    assert not ok
    assert "FAIL" in report and "expected 4 got 3" in report


def test_scenario_expected_error():
    scen = {"name": "bad-build",
            "steps": [{"op": "build", "label": "X", "expect_error": True,
                       "spec": {"build": "extension", "p": 2, "n": 2,
                                "modulus": [0, 0, 1]}}]}
    report, ok, _ = scenario_run(scen, seed=0)
    assert ok, report


def test_cli_scan_lines():
    proc = run_cli("scan", "--algebra", "F9", "--variant", "1",
                   "--f", "frob:1", "--g", "frob:1")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 10            # header + 9 records
    assert lines[0].endswith("seed=0")
    assert sum("status=division" in l for l in lines) == 5


def test_cli_derivations():
    proc = run_cli("derivations", "--algebra", "H")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["der_dim"] == 3 and doc["seed"] == 0


def test_cli_scenario_exit_codes(tmp_path):
    proc = run_cli("scenario", "--name", "albert-f4")
    assert proc.returncode == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "asserting-wrong-derdim",
        "steps": [{"op": "build", "label": "H", "spec": {"fixture": "H"}},
                  {"op": "derivations", "algebra": "H", "expect_dim": 4}]}))
    proc = run_cli("scenario", "--file", str(bad))
    assert proc.returncode == 1
    assert "expected 4 got 3" in proc.stdout


def test_cli_usage_errors(tmp_path):
    proc = run_cli("frobnicate")
    assert proc.returncode == 2
    bad = tmp_path / "bad_spec.json"
    bad.write_text(json.dumps({"build": "extension", "p": 2, "n": 2,
                               "modulus": [0, 0, 1]}))
    proc = run_cli("build", "--spec", str(bad))
    assert proc.returncode == 2
    proc = run_cli("scan", "--algebra", "nonexistent-fixture",
                   "--f", "id", "--g", "id")
    assert proc.returncode == 2


def test_cli_export_build_round_trip(tmp_path):
    out = tmp_path / "h.json"
    proc = run_cli("export", "--fixture", "H", "--out", str(out))
    assert proc.returncode == 0
    proc = run_cli("check-division", "--algebra", str(out), "--trials", "10")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["status"] == "no-counterexample(10)"


def test_cli_seed_env_override():
    proc = run_cli("scan", "--algebra", "F4", "--f", "frob:1", "--g", "frob:1",
                   env_extra={"TWISTKIT_SEED": "7"})
    assert "seed=7" in proc.stdout.splitlines()[0]


def test_bundled_scenario_names_stable():
    assert set(BUNDLED) == {
        "albert-f9", "albert-f27", "albert-f4", "hurwitz-structure",
        "reflection-star-oracle", "involution-star-oracle",
        "twist-containment", "subalgebra-kaplanski", "commutative-twist",
    }
