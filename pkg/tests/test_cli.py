import subprocess
import sys

import pytest

from qkdplan.cli import main

REQS = "1 1 3 2\n2 2 3 1 dist=point\n"
TOPO = "nodes: 3\n1 2 200.0 150 50\n2 1 200.0 150 50\n2 3 250.0 150 50\n3 2 250.0 150 50\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "r.txt").write_text(REQS)
    (tmp_path / "t.txt").write_text(TOPO)
    return tmp_path


def test_plan(files, capsys):
    rc = main(["plan", "--topology", str(files / "t.txt"), "--requests", str(files / "r.txt"), "--out-dir", str(files / "o")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status: optimal" in out and "route.1: 1-2-3" in out
    assert (files / "o" / "plan.txt").read_text() == out


def test_plan_incumbent_exit(files):
    (files / "r.txt").write_text("1 1 3 1\n2 1 3 1\n3 2 3 1\n")
    rc = main(["plan", "--topology", str(files / "t.txt"), "--requests", str(files / "r.txt"), "--budget", "1"])
    assert rc in (0, 3)


def test_plan_infeasible_exit(files, capsys):
    (files / "t.txt").write_text("nodes: 3\n1 2 200.0 1 1\n2 1 200.0 1 1\n")
    rc = main(["plan", "--topology", str(files / "t.txt"), "--requests", str(files / "r.txt")])
    assert rc == 4
    assert "infeasible" in capsys.readouterr().err


def test_bad_input_exit(files, capsys):
    (files / "t.txt").write_text("nodes: 3\n1 9 200.0 1 1\n")
    assert main(["plan", "--topology", str(files / "t.txt"), "--requests", str(files / "r.txt")]) == 2
    assert "dangling" in capsys.readouterr().err


def test_export_lp(files):
    out = files / "x.lp"
    assert main(["export-lp", "--topology", str(files / "t.txt"), "--requests", str(files / "r.txt"), str(out)]) == 0
    assert out.read_text().startswith("\\ qkdplan")


def test_validate(capsys):
    assert main(["validate", "--instances", "5", "--seed", "3"]) == 0
    assert "5/5" in capsys.readouterr().out


def test_sweep(files):
    cfg = files / "u.cfg"
    cfg.write_text("experiment = utilization\naxis = secret_key_rate\ntopology = line\nvalues = 0:3\n")
    out = files / "out"
    assert main(["sweep", str(cfg), "--seed", "4", "--out-dir", str(out), "--dump-solutions"]) == 0
    assert (out / "utilization_secret_key_rate.csv").exists()
    assert len(list((out / "solutions").iterdir())) == 4
    assert main(["sweep", str(cfg), "--out-dir", str(out)]) == 2  # no seed for a seeded line


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qkdplan", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for cmd in ("plan", "sweep", "export-lp", "validate"):
        assert cmd in res.stdout
