import json
import subprocess
import sys

import pytest

from fbb.cli import run


def test_meanders(capsys):
    assert run(["meanders", "--count", "4"]) == 0
    assert capsys.readouterr().out.strip() == "1,2,8,46"


def test_cumulants_and_moments(capsys):
    assert run(["cumulants", "--law", "commutator", "--count", "4"]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) >= 4
    assert run(["moments", "--law", "commutator", "--count", "4"]) == 0
    assert "10" in capsys.readouterr().out.replace("1.0000000000000000e+01", "10")


def test_edge_all_json(capsys):
    assert run(["edge", "--law", "commutator", "--method", "all", "--out", "-"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert [r["method"] for r in reports] == ["kmin", "variational", "implicit"]
    for r in reports:
        assert r["right"] == pytest.approx(3.3301906767855614, abs=1e-9)


def test_edge_csv(capsys):
    assert run(["edge", "--law", "levy-area", "--method", "implicit", "--format", "csv",
                "--out", "-"]) == 0
    out = capsys.readouterr().out
    assert "3.946013883" in out


def test_density_to_file(tmp_path, capsys):
    target = tmp_path / "d.csv"
    bound = tmp_path / "b.csv"
    assert run(["density", "--law", "gamma", "--points", "7", "--out", str(target),
                "--boundary", str(bound)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "x,phi" and len(lines) == 8
    xs = [float(line.split(",")[0]) for line in lines[1:]]
    assert xs == sorted(xs)
    assert bound.read_text().splitlines()[0] == "t,r,x,im_residual"


def test_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FBB_OUT_DIR", str(tmp_path))
    assert run(["density", "--law", "commutator", "--points", "60"]) == 0
    assert (tmp_path / "commutator_density.csv").exists()


def test_mc_sidecar(tmp_path):
    target = tmp_path / "mc.csv"
    assert run(["mc", "--law", "semicircle", "--dim", "40", "--modes", "10", "--samples", "3",
                "--seed", "5", "--bins", "10", "--out", str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "bin_lo,bin_hi,count,empirical_density,analytic_density"
    assert len(lines) == 11
    meta = json.loads((tmp_path / "mc.csv.json").read_text())
    assert meta["seed"] == 5 and meta["N"] == 40 and meta["samples"] == 3
    assert 0 <= meta["ks"] < 0.1
    assert [m["order"] for m in meta["trace_moments"]] == [1, 2, 3, 4]


def test_mc_signature(tmp_path):
    target = tmp_path / "sig.csv"
    assert run(["mc", "--law", "signature", "--dim", "3", "--modes", "5", "--samples", "2",
                "--out", str(target)]) == 0
    meta = json.loads((tmp_path / "sig.csv.json").read_text())
    assert meta["ks"] is None
    assert "nan" in target.read_text().splitlines()[1]


def test_mercer_and_hadamard(capsys):
    assert run(["mercer", "--nodes", "200", "--count", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "n,lambda,exact"
    assert run(["hadamard-check", "--order", "4"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 5


def test_figures(tmp_path):
    assert run(["figures", "--out-dir", str(tmp_path), "--points", "60"]) == 0
    assert (tmp_path / "gamma_density.csv").exists()
    assert (tmp_path / "levy_area_density.csv").exists()


@pytest.mark.parametrize("argv", [
    ["meanders", "--count", "0"],
    ["meanders", "--count", "26"],
    ["cumulants", "--law", "nope"],
    ["mercer", "--nodes", "50"],
    ["mc", "--law", "signature", "--dim", "20"],
    ["edge", "--law", "gamma", "--method", "weird"],
    [],
])
def test_usage_errors_exit_1(argv, capsys):
    assert run(argv) == 1


def test_numeric_failure_exit_2(capsys):
    assert run(["edge", "--law", "signature", "--method", "kmin"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("fbb edge")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fbb", "meanders", "--count", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1,2,8"
    proc = subprocess.run([sys.executable, "-m", "fbb", "mercer", "--count", "11"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
