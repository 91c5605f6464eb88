import json
import subprocess
import sys

import pytest

from jordan_tkk.cli import load_algebra, run
from jordan_tkk.jordan import JordanAlgebra


def report(*argv):
    status, text = run(list(argv))
    return status, json.loads(text) if text.lstrip().startswith("{") else text


def test_dims_single_generator():
    status, rep = report("dims", "--gens", "1", "--max-degree", "6")
    assert status == 0
    assert [r["dim"] for r in rep["rows"]] == [1] * 6
    assert rep["seed"] == 0 and rep["statement"] == "free-jordan-dimensions"


def test_dims_csv():
    status, text = report("dims", "--gens", "2", "--max-degree", "3", "--format", "csv")
    assert status == 0
    lines = text.strip().splitlines()
    assert lines[0] == "degree,monomials,relations,dim"
    assert [int(l.split(",")[-1]) for l in lines[1:]] == [2, 3, 6]


def test_partitions_verify():
    status, rep = report("partitions", "verify", "--n", "6")
    assert status == 0 and all(r["girard_newton"] for r in rep["rows"])


def test_validate_and_tkk():
    assert report("validate", "--algebra", "sym:3")[1]["ok"]
    status, rep = report("tkk", "jacobi", "--algebra", "truncpoly:3")
    assert status == 0 and rep["jacobi"]


def test_tkk_build_writes_file(tmp_path):
    out = tmp_path / "g.json"
    status, rep = report("tkk", "build", "--algebra", "truncpoly:2", "--out", str(out))
    assert status == 0
    assert json.loads(out.read_text())["dim"] == rep["dim"]


def test_export_roundtrip(tmp_path):
    out = tmp_path / "j.json"
    status, _ = report("export", "--fixture", "free:2:4", "--out", str(out))
    assert status == 0
    J = load_algebra(str(out))
    assert isinstance(J, JordanAlgebra) and J.dim == 12
    status, rep = report("homology", "--k", "1", "--algebra", str(out))
    assert status == 0 and rep["total"] == 6


def test_garland():
    status, rep = report("garland", "verify", "--nmax", "2")
    assert status == 0 and rep["ok"]


def test_dominance_commands():
    status, rep = report("dominance", "check", "--algebra", "truncpoly:3", "--regular")
    assert status == 0 and rep["dominant"]
    status, rep = report("dominance", "check", "--algebra", "truncpoly:3", "--scalar", "1/2")
    assert status == 1 and rep["error"] == "ValueError"


def test_dominance_jspace_file(tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps({"rho": [[["2"]], [["0"]], [["0"]]]}))
    status, rep = report("dominance", "check", "--algebra", "truncpoly:3", "--jspace", str(path),
                         "--level", "2")
    assert status == 0 and rep["dominant"]
    status, rep = report("dominance", "check", "--algebra", "truncpoly:3", "--jspace", str(path),
                         "--level", "3")
    assert status == 1 and rep["error"] == "CLIError"
    path.write_text(json.dumps({"rho": [[["1"]], [["1"]], [["0"]]]}))
    status, rep = report("dominance", "check", "--algebra", "truncpoly:3", "--jspace", str(path),
                         "--embedding")
    assert status == 0 and not rep["dominant"]


def test_weyl_and_topcycles():
    status, rep = report("weyl", "--algebra", "truncpoly:3", "--level", "2", "--check")
    assert status == 0 and rep["total_dim"] == 4
    status, rep = report("topcycles", "--algebra", "free:2:5", "--k", "1")
    assert status == 0 and rep["ok"]


def test_homology_relative():
    status, rep = report("homology", "--algebra", "free:2:4", "--k", "2", "--relative")
    assert status == 0 and rep["total"] == 0


def test_errors_are_machine_readable():
    status, rep = report("homology", "--algebra", "nope", "--k", "1")
    assert status == 1 and set(rep) >= {"error", "message"}
    status, rep = report("bogus")
    assert status == 1 and rep["error"] == "usage"
    status, rep = report("homology", "--algebra", "free:2:4", "--k", "2", "--max-block", "2")
    assert status == 1 and rep["block"]["size"] > 2


def test_timing_flag():
    _, rep = report("--timing", "dims", "--gens", "1", "--max-degree", "2")
    assert "wall_time_s" in rep
    _, rep = report("dims", "--gens", "1", "--max-degree", "2")
    assert "wall_time_s" not in rep


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "jordan_tkk", "--seed", "3", "dominance", "check",
           "--algebra", "truncpoly:3", "--trivial", "2", "--mode", "random"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["seed"] == 3
