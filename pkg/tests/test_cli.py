"""End-to-end CLI contract: configs, outputs, exit codes, determinism."""

import csv
import io
import json
import shutil
import subprocess
import sys
import warnings

import pytest

from covertfd import ClampWarning
from covertfd.cli import load_config, main, parse_power
from covertfd.errors import ConfigError


def run_cli(argv):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        warnings.simplefilter("ignore", UserWarning)
        return main(argv)


def write_config(tmp_path, text, name="config.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def read_csv_rows(path):
    body = [
        line
        for line in path.read_text().splitlines()
        if line and not line.startswith("#")
    ]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


# ------------------------------------------------------------ config layer ----


def test_parse_power_accepts_watts_and_dbm():
    assert parse_power(2.5, "x") == 2.5
    assert parse_power("0 dBm", "x") == pytest.approx(1e-3, rel=1e-15)
    assert parse_power("-3dBm", "x") == pytest.approx(10 ** (-3.3), rel=1e-12)
    assert parse_power("0.25", "x") == 0.25
    with pytest.raises(ConfigError):
        parse_power(True, "x")
    with pytest.raises(ConfigError):
        parse_power("lots dBm", "x")
    with pytest.raises(ConfigError):
        parse_power([1.0], "x")


def test_load_config_defaults_and_overrides(tmp_path):
    cfg = load_config(write_config(tmp_path, 'lambda_bw = 0.8\nsigma_w2 = "-3 dBm"\n'))
    assert cfg["lambda_bw"] == 0.8
    assert cfg["sigma_w2"] == pytest.approx(10 ** (-3.3), rel=1e-12)
    assert cfg["sigma_b2"] == pytest.approx(1e-3, rel=1e-15)  # default "0 dBm"
    assert cfg["tau"] == 2.0 and cfg["epsilon"] == 0.2
    assert cfg["sweep"]["steps"] == 25
    assert cfg["mc"] == {"trials": 100_000, "seed": 0}


def test_load_config_rejects_unknown_keys(tmp_path):
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config(write_config(tmp_path, "lambda_zz = 1.0\n"))


def test_load_config_rejects_bad_sweep(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "[sweep]\nmin = 5.0\nmax = 1.0\n"))
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "[sweep]\nsteps = 1\n"))


def test_config_error_exit_code(tmp_path):
    assert run_cli(["xi-curve", "--config", str(tmp_path / "missing.toml")]) == 3
    bad = write_config(tmp_path, "whatever = 1\n")
    assert run_cli(["xi-curve", "--config", bad]) == 3
    invalid = write_config(tmp_path, "n_uses = 0\n")
    assert run_cli(["xi-curve", "--config", invalid]) == 3


# --------------------------------------------------------------- xi-curve ----


XI_CONFIG = """
lambda_bw = 0.8
[sweep]
var = "tau"
min = 0.0005
max = 12.0
steps = 24
"""


def test_xi_curve_output(tmp_path):
    cfg = write_config(tmp_path, XI_CONFIG)
    out = tmp_path / "xi.csv"
    assert run_cli(["xi-curve", "--config", cfg, "--out", str(out)]) == 0

    text = out.read_text()
    lines = text.splitlines()
    assert lines[0].startswith("# covertfd ")
    assert lines[1].startswith("# config = ")
    assert lines[2] == "# seed = 0"
    embedded = json.loads(lines[1].split("= ", 1)[1])
    assert embedded["lambda_bw"] == 0.8

    rows = read_csv_rows(out)
    assert len(rows) == 24
    assert list(rows[0]) == ["tau", "p_fa", "p_md", "xi", "branch"]
    # below rho_1 the warden is blind: xi = 1 exactly
    assert rows[0]["branch"] == "BELOW_RHO1"
    assert float(rows[0]["xi"]) == 1.0
    assert rows[-1]["branch"] == "ABOVE_RHO2"
    assert 0.0 < float(rows[-1]["xi"]) < 1.0
    assert any(line.startswith("# tau_star = ") for line in lines)
    assert any(line.startswith("# xi_min = ") for line in lines)


def test_xi_curve_reruns_are_byte_identical(tmp_path):
    cfg = write_config(tmp_path, XI_CONFIG)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(["xi-curve", "--config", cfg, "--out", str(a)]) == 0
    assert run_cli(["xi-curve", "--config", cfg, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_override_lands_in_header(tmp_path):
    cfg = write_config(tmp_path, XI_CONFIG)
    out = tmp_path / "xi.csv"
    assert run_cli(["xi-curve", "--config", cfg, "--out", str(out), "--seed", "7"]) == 0
    assert "# seed = 7" in out.read_text().splitlines()


# ------------------------------------------------------------- sweep-pbmax ----


SWEEP_CONFIG = """
lambda_bw = 0.8
tau = 2.0
epsilon = 0.2
[sweep]
min = 0.05
max = 0.65
steps = 5
[mc]
trials = 2000
"""


def test_sweep_pbmax_cdi(tmp_path):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    out = tmp_path / "sweep.csv"
    assert run_cli(["sweep-pbmax", "--config", cfg, "--out", str(out)]) == 0
    rows = read_csv_rows(out)
    assert len(rows) == 5
    assert all(r["feasible"] == "true" for r in rows)
    assert all(float(r["xi_residual"]) <= 1e-6 for r in rows)
    outs = [float(r["p_out"]) for r in rows]
    assert outs == sorted(outs)  # increasing over this band
    text = out.read_text()
    assert "# p_b_max_star = " in text
    assert "# p_out_star = " in text


def test_sweep_pbmax_all_infeasible_exit_code(tmp_path):
    cfg = write_config(
        tmp_path,
        "lambda_bw = 0.8\n[sweep]\nmin = 2.0\nmax = 10.0\nsteps = 4\n",
    )
    out = tmp_path / "sweep.csv"
    assert run_cli(["sweep-pbmax", "--config", cfg, "--out", str(out)]) == 2
    text = out.read_text()
    assert "# ALL_INFEASIBLE" in text
    assert "COVERT_UNATTAINABLE" in text
    rows = read_csv_rows(out)
    assert all(r["feasible"] == "false" for r in rows)
    assert all(r["p_a_opt"] == "" for r in rows)  # nan prints as empty


def test_sweep_pbmax_csi_scenario(tmp_path):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    out = tmp_path / "csi.csv"
    rc = run_cli(
        ["sweep-pbmax", "--config", cfg, "--out", str(out), "--scenario", "csi"]
    )
    assert rc == 0
    rows = read_csv_rows(out)
    assert len(rows) == 5
    assert all(r["p_a_opt"] == "" for r in rows)
    assert all(float(r["xi_residual"]) > 0.0 for r in rows)  # MC std_err
    assert all(r["feasible"] == "true" for r in rows)
    assert "xi_residual column carries the MC std_err" in out.read_text()


def test_sweep_pbmax_csi_deterministic(tmp_path):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert (
            run_cli(
                ["sweep-pbmax", "--config", cfg, "--out", str(path), "--scenario", "csi"]
            )
            == 0
        )
    assert a.read_bytes() == b.read_bytes()


# ------------------------------------------------------------------ design ----


def test_design_report_ok(tmp_path):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    out = tmp_path / "design.json"
    assert run_cli(["design", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["status"] == "OK"
    assert report["mode"] == "EXACT_ROOT"
    assert report["residual"] <= 1e-6
    assert report["p_b_max_opt"] == pytest.approx(0.05, abs=1e-3)
    assert report["config"]["lambda_bw"] == 0.8


def test_design_infeasible_exit_code(tmp_path):
    cfg = write_config(
        tmp_path, "lambda_bw = 0.8\n[sweep]\nmin = 2.0\nmax = 10.0\nsteps = 4\n"
    )
    out = tmp_path / "design.json"
    assert run_cli(["design", "--config", cfg, "--out", str(out)]) == 2
    report = json.loads(out.read_text())
    assert report["status"] == "INFEASIBLE"
    assert any("COVERT_UNATTAINABLE" in r for r in report["reasons"])


def test_design_paper_mode_is_infeasible(tmp_path):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    out = tmp_path / "design.json"
    rc = run_cli(["design", "--config", cfg, "--out", str(out), "--mode", "paper"])
    assert rc == 2
    report = json.loads(out.read_text())
    assert report["status"] == "INFEASIBLE"
    assert any("DELTA_NEG" in r for r in report["reasons"])


# ---------------------------------------------------------------- validate ----


def test_validate_all_passes(tmp_path):
    cfg = write_config(tmp_path, "[mc]\ntrials = 40000\n")
    out = tmp_path / "validate.json"
    assert run_cli(["validate", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["failed"] == 0
    statuses = {c["check"]: c["status"] for c in report["checks"]}
    assert statuses["ei_vs_quadrature_rel"] == "PASS"
    assert statuses["far_vs_quadrature_abs"] == "PASS"
    assert statuses["mdr_vs_quadrature_abs"] == "PASS"
    assert statuses["outage_vs_quadrature_abs"] == "PASS"
    assert statuses["far_mc_4se"] == "PASS"
    assert statuses["mdr_plus_bias_mc_4se"] == "PASS"
    assert statuses["outage_mc_4se"] == "PASS"
    assert {"check", "target", "observed", "tolerance", "status"} <= set(
        report["checks"][0]
    )


def test_validate_single_suite(tmp_path):
    cfg = write_config(tmp_path, "")
    out = tmp_path / "cf.json"
    assert (
        run_cli(
            ["validate", "--config", cfg, "--out", str(out), "--suite", "closed-forms"]
        )
        == 0
    )
    report = json.loads(out.read_text())
    assert report["suites"] == ["closed-forms"]
    assert all(c["status"] == "PASS" for c in report["checks"])


def test_validate_underpowered_is_inconclusive_not_fail(tmp_path):
    cfg = write_config(tmp_path, "[mc]\ntrials = 10\n")
    out = tmp_path / "tiny.json"
    assert run_cli(["validate", "--config", cfg, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    statuses = [c["status"] for c in report["checks"]]
    assert "INCONCLUSIVE" in statuses
    assert "FAIL" not in statuses


# ------------------------------------------------------------- entry points ----


def test_console_script_exists_and_reports_version():
    exe = shutil.which("covertfd")
    assert exe, "console script should be installed"
    proc = subprocess.run([exe, "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("covertfd ")


def test_module_invocation(tmp_path):
    cfg = write_config(tmp_path, XI_CONFIG)
    out = tmp_path / "xi.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "covertfd.cli", "xi-curve", "--config", cfg,
         "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.exists()
