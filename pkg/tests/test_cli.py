import subprocess
import sys

import pytest

from faultdom import __version__
from faultdom.cli import main
from faultdom.graph import petersen

SINGLE = "p cnf 3 1\n1 2 3 0\n"
PETERSEN_REST = "=1 2 3 4 5 6 7 8 9"


def run(capsys, *argv):
    try:
        code = main(["--quiet", *argv])
    except SystemExit as e:  # argparse usage errors
        code = e.code
    out = capsys.readouterr()
    return code, out.out


@pytest.fixture
def files(tmp_path):
    P = petersen()
    (tmp_path / "petersen.el").write_text(f"{P.n} {P.m}\n" + "".join(f"{u} {v}\n" for u, v in P.edges()))
    (tmp_path / "c4.el").write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    (tmp_path / "all.ds").write_text("0 1 2 3\n")
    (tmp_path / "one.cnf").write_text(SINGLE)
    (tmp_path / "bad.cnf").write_text("p cnf 3 1\n1 2 0\n")
    (tmp_path / "sq.pat").write_text("SQ 2 3\n0 0\n0 1\n0 2\n1 0\n")
    return tmp_path


def test_solve_petersen(capsys, files):
    code, out = run(capsys, "solve", "-g", str(files / "petersen.el"), "--variant", "err")
    assert code == 0 and out.startswith("ERR_LD 9 proved ")


def test_verify_c4(capsys, files):
    code, out = run(capsys, "verify", "-g", str(files / "c4.el"), "-s", str(files / "all.ds"), "--variant", "err")
    assert code == 1 and out.splitlines()[0] == "VIOLATION ERR_LD ii 0 2 1"


def test_verify_ok(capsys):
    assert run(capsys, "verify", "-g", "family:petersen", "-s", PETERSEN_REST) == (0, "OK\n")


def test_grid_certify(capsys, files):
    assert run(capsys, "grid-certify", "-p", str(files / "sq.pat")) == (0, "OK density 2/3 torus 6x6\n")
    assert run(capsys, "grid-certify", "-p", "ladder") == (0, "OK density 5/6 torus 2x6\n")


def test_grid_search(capsys):
    code, out = run(capsys, "grid-search", "--lattice", "SQ", "--max-cell", "3x3")
    assert code == 0 and out.splitlines()[:2] == ["# density 2/3", "SQ 2 3"]


def test_exists(capsys):
    assert run(capsys, "exists", "-g", "family:cycle:5") == (0, "EXISTS ERR_LD\n")
    assert run(capsys, "exists", "-g", "family:cycle:3") == (1, "NONE ERR_LD\n")


def test_reduce_and_roundtrip(capsys, files):
    out_path = files / "red.el"
    code, out = run(capsys, "reduce", "-f", str(files / "one.cnf"), "-o", str(out_path))
    assert code == 0 and out == "REDUCTION n=41 m=57 mandatory=35 threshold=38\n"
    assert out_path.read_text().startswith("41 57\n")
    assert (files / "red.labels").read_text().startswith("0 x_1\n1 xbar_1\n")
    assert len((files / "red.ds").read_text().split()) == 35
    code, out = run(capsys, "roundtrip", "-f", str(files / "one.cnf"))
    assert (code, out) == (0, "ROUNDTRIP OK sat=yes optimum=38 threshold=38\n")


def test_simulate_and_sweep(capsys):
    code, out = run(capsys, "simulate", "-g", "family:petersen", "-s", PETERSEN_REST,
                    "--intruder", "0", "--fault", "1:0", "--decode")
    lines = out.splitlines()
    assert code == 0 and "4:1" in lines and "5:1" in lines and "1:0" in lines
    assert lines[-2:] == ["consistency LOCATED 0", "elimination LOCATED 0"]
    code, out = run(capsys, "sweep", "-g", "family:cycle:5", "-s", "=0 1 2 3 4")
    assert (code, out) == (0, "scenarios=66 correct=66 disagreements=0\n")
    code, out = run(capsys, "sweep", "-g", "family:petersen", "-s", "=1 2 3 4 5 6 7 8")
    assert code == 1 and out.startswith("PRECONDITION")


def test_export_dot(capsys):
    code, out = run(capsys, "export-dot", "-g", "family:cycle:5", "-s", "=0 2")
    assert code == 0 and out.startswith("graph G {") and out.count("filled") == 2


@pytest.mark.parametrize("argv", [
    ["verify", "-g", "missing.el", "-s", "=0"],
    ["verify", "-g", "family:petersen", "-s", "=0 99"],
    ["verify", "-g", "family:nonsense", "-s", "=0"],
    ["solve", "--bogus-flag"],
    ["grid-certify", "-p", "no-such-pattern"],
    ["reduce", "-f", "missing.cnf", "-o", "x.el"],
])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_cnf_exit_2(capsys, files):
    assert run(capsys, "roundtrip", "-f", str(files / "bad.cnf"))[0] == 2


def test_reports_are_byte_stable(capsys, files):
    argv = ["solve", "-g", str(files / "petersen.el"), "--variant", "err"]
    first = run(capsys, *argv)
    assert all(run(capsys, *argv) == first for _ in range(2))


def test_banner_and_quiet():
    cmd = [sys.executable, "-m", "faultdom", "verify", "-g", "family:cycle:5", "-s", "=0 1 2 3 4"]
    loud = subprocess.run(cmd, capture_output=True, text=True)
    quiet = subprocess.run(cmd[:3] + ["--quiet"] + cmd[3:], capture_output=True, text=True)
    assert loud.returncode == quiet.returncode == 0
    assert loud.stdout == quiet.stdout == "OK\n"
    assert f"faultdom {__version__}" in loud.stderr and quiet.stderr == ""
