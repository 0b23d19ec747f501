import numpy as np
import pytest

from kernelwave.cli import main
from kernelwave.config import read_csv


def run_cli(*argv):
    return main(list(argv))


def write(path, text):
    path.write_text(text)
    return str(path)


SWEEP_INI = """
[sweep]
kernel_1 = bbm
kernel_2 = dirac
deltas = 0.4 0.2 0.1 0.05
n = 256
t_end = 0.5
"""

SIM_INI = """
[simulate]
kernel = bbm
delta = 0.2
n = 256
t_end = 0.5
"""


# --- kernels ----------------------------------------------------------------

def test_kernels_listing(capsys):
    assert run_cli("kernels") == 0
    out = capsys.readouterr().out
    assert "exponential" in out and "rosenau" in out and "five_point" in out
    bbm_row = next(line for line in out.splitlines() if line.startswith("exponential"))
    assert " 1 " in bbm_row and " 2 " in bbm_row  # m0 = 1, m2 = 2
    dirac_row = next(line for line in out.splitlines() if line.startswith("dirac"))
    assert dirac_row.rstrip().endswith("-")
    frac_row = next(line for line in out.splitlines() if line.startswith("fractional"))
    assert "undefined" in frac_row and "1.5" in frac_row


# --- simulate ---------------------------------------------------------------

def test_simulate_zero_amplitude(tmp_path):
    cfg = write(tmp_path / "c.ini", SIM_INI.replace("gaussian", "gaussian") + "u0 = gaussian:amplitude=0\n")
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet") == 0
    data = read_csv(out / "trajectory.csv")
    assert np.all(data["max_abs"] == 0.0)
    assert np.all(data["h_s_norm"] == 0.0)


def test_simulate_default_run(tmp_path):
    cfg = write(tmp_path / "c.ini", SIM_INI)
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet") == 0
    data = read_csv(out / "trajectory.csv")
    assert list(data) == ["t", "mass", "h_s_norm", "max_abs", "alias_frac", "boundary_mag"]
    assert np.max(np.abs(data["mass"] - data["mass"][0])) <= 1e-12 * (1 + abs(data["mass"][0]))
    energy = read_csv(out / "energy.csv")
    assert list(energy) == ["t", "e_s", "h_s_norm", "c1", "c2"]
    manifest = (out / "manifest.ini").read_text()
    assert "completed = true" in manifest
    assert "tool_version" in manifest


def test_simulate_field_snapshots(tmp_path):
    cfg = write(tmp_path / "c.ini", SIM_INI + "save_fields = true\nsnapshot_stride = 50\n")
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet") == 0
    snaps = sorted((out / "fields").glob("snap_*.csv"))
    assert snaps
    field = read_csv(snaps[0])
    assert list(field) == ["x", "u"]
    assert len(field["x"]) == 256


def test_simulate_shock_aborts_with_exit_2(tmp_path):
    cfg = write(
        tmp_path / "c.ini",
        "[simulate]\nkernel = dirac\ndelta = 0.1\nn = 256\nt_end = 3.0\nu0 = gaussian:amplitude=1.0,width=3.5\n",
    )
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet") == 2
    manifest = (out / "manifest.ini").read_text()
    assert "abort_reason = resolution exhausted" in manifest
    assert "completed = false" in manifest


# --- config errors ----------------------------------------------------------

def test_malformed_config_exits_1_with_line(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", "[simulate]\nkernel bbm\n")
    assert run_cli("simulate", "--config", cfg, "--quiet") == 1
    err = capsys.readouterr().err
    assert "line" in err and "config error" in err


def test_missing_section_exits_1(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", "[other]\nx = 1\n")
    assert run_cli("simulate", "--config", cfg, "--quiet") == 1
    assert "[simulate]" in capsys.readouterr().err


def test_unknown_kernel_exits_1(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", "[simulate]\nkernel = mystery\n")
    assert run_cli("simulate", "--config", cfg, "--quiet") == 1
    assert "available:" in capsys.readouterr().err


def test_bad_value_is_anchored(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", "[simulate]\nkernel = bbm\ndelta = much\n")
    assert run_cli("simulate", "--config", cfg, "--quiet") == 1
    err = capsys.readouterr().err
    assert "[simulate]" in err and "delta" in err


# --- compare ----------------------------------------------------------------

def test_compare_same_kernel(tmp_path, capsys):
    cfg = write(
        tmp_path / "c.ini",
        "[compare]\nkernel_1 = bbm\nkernel_2 = bbm\ndelta = 0.1\nn = 256\nt_end = 0.5\n",
    )
    out = tmp_path / "out"
    assert run_cli("compare", "--config", cfg, "--out", str(out)) == 0
    data = read_csv(out / "divergence.csv")
    assert list(data) == ["t", "d"]
    assert np.all(data["d"] == 0.0)
    assert "PASS" in capsys.readouterr().out


def test_compare_aborting_member_exits_2(tmp_path):
    cfg = write(
        tmp_path / "c.ini",
        "[compare]\nkernel_1 = dirac\nkernel_2 = bbm\ndelta = 0.1\nn = 256\nt_end = 3.0\n"
        "u0 = gaussian:amplitude=1.0,width=3.5\n",
    )
    out = tmp_path / "out"
    assert run_cli("compare", "--config", cfg, "--out", str(out), "--quiet") == 2
    manifest = (out / "manifest.ini").read_text()
    assert "resolution exhausted" in manifest


# --- sweep ------------------------------------------------------------------

def test_sweep_needs_four_deltas(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", SWEEP_INI.replace("0.4 0.2 0.1 0.05", "0.4 0.05"))
    assert run_cli("sweep", "--config", cfg, "--quiet") == 1
    assert ">= 4 deltas" in capsys.readouterr().err


def test_sweep_pass(tmp_path, capsys):
    cfg = write(tmp_path / "c.ini", SWEEP_INI)
    out = tmp_path / "out"
    assert run_cli("sweep", "--config", cfg, "--out", str(out)) == 0
    stdout = capsys.readouterr().out
    assert "(predicted 2) PASS" in stdout
    report = read_csv(out / "rate_report.csv")
    assert list(report) == ["delta", "d_T", "predicted_rate", "slope", "residual", "linearity"]
    summary = (out / "summary.ini").read_text()
    assert "passed = true" in summary
    assert (out / "divergence_delta_0.05.csv").exists()


def test_sweep_explicit_window_failure_exits_2(tmp_path):
    cfg = write(tmp_path / "c.ini", SWEEP_INI + "slope_window = 3.9 4.1\n")
    out = tmp_path / "out"
    assert run_cli("sweep", "--config", cfg, "--out", str(out), "--quiet") == 2
    assert "passed = false" in (out / "summary.ini").read_text()


def test_sweep_determinism_and_manifest_rerun(tmp_path):
    cfg = write(tmp_path / "c.ini", SWEEP_INI)
    out1, out2, out3 = (tmp_path / name for name in ("a", "b", "c"))
    assert run_cli("sweep", "--config", cfg, "--out", str(out1), "--quiet") == 0
    assert run_cli("sweep", "--config", cfg, "--out", str(out2), "--quiet") == 0
    csvs = sorted(p.name for p in out1.glob("*.csv"))
    assert csvs
    for name in csvs:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    # the manifest doubles as a config and reproduces the outputs bit for bit
    assert run_cli("sweep", "--config", str(out1 / "manifest.ini"), "--out", str(out3), "--quiet") == 0
    for name in csvs:
        assert (out1 / name).read_bytes() == (out3 / name).read_bytes()


def test_sweep_jobs_flag_is_deterministic(tmp_path):
    cfg = write(tmp_path / "c.ini", SWEEP_INI)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run_cli("sweep", "--config", cfg, "--out", str(out1), "--quiet") == 0
    assert run_cli("sweep", "--config", cfg, "--out", str(out2), "--quiet", "--jobs", "2") == 0
    for name in sorted(p.name for p in out1.glob("*.csv")):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_csv_round_trip_is_exact(tmp_path):
    cfg = write(tmp_path / "c.ini", SIM_INI)
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet") == 0
    first = read_csv(out / "trajectory.csv")
    # rewrite what was read and compare bytes
    from kernelwave.config import write_csv

    write_csv(out / "copy.csv", first)
    assert (out / "copy.csv").read_bytes() == (out / "trajectory.csv").read_bytes()


# --- suite --------------------------------------------------------------------

def test_suite_runs_kernel_list(tmp_path, capsys):
    cfg = write(
        tmp_path / "c.ini",
        "[suite]\nkernel_1 = dirac\nkernels = rectangular five_point\n"
        "deltas = 0.4 0.2 0.1 0.05\nn = 256\nt_end = 0.5\n",
    )
    out = tmp_path / "out"
    assert run_cli("suite", "--config", cfg, "--out", str(out)) == 0
    stdout = capsys.readouterr().out
    assert "rectangular vs dirac" in stdout and "five_point vs dirac" in stdout
    summary = (out / "summary.ini").read_text()
    assert "[result:rectangular]" in summary and "[result:five_point]" in summary
    assert (out / "rectangular_rate_report.csv").exists()
    assert (out / "five_point_rate_report.csv").exists()


def test_sobolev_override_flag(tmp_path):
    cfg = write(tmp_path / "c.ini", SIM_INI)
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", cfg, "--out", str(out), "--quiet", "--s", "3.0") == 0
    assert "s = 3" in (out / "manifest.ini").read_text()
