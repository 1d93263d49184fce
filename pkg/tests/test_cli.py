import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threecolour import reference
from threecolour.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from threecolour.exactpoly import asm_count


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--n", "4", "--format", "csv")
    assert code == EXIT_OK
    rows = [[int(v) for v in line.split(",")] for line in out.strip().splitlines()]
    assert rows == reference.COUNT_MATRICES[4]


@given(st.integers(0, 9))
@settings(max_examples=10, deadline=None)
def test_count_total(n):
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        assert main(["count", "--n", str(n)]) == EXIT_OK
    assert int(json.loads(buf.getvalue())["total"]) == asm_count(n)


def test_family_json(capsys):
    code, out, _ = run(capsys, "family", "--kind", "p", "--n", "2")
    obj = json.loads(out)
    assert code == EXIT_OK
    assert obj["text"] == "5*zeta^3 + 15*zeta^2 + 7*zeta + 1"
    assert obj["manifest"]["degree"] == 3


def test_family_P_csv_is_usage_error(capsys):
    code, _, err = run(capsys, "family", "--kind", "P", "--n", "2", "--format", "csv")
    assert code == EXIT_USAGE and "bivariate" in err


def test_zpoly_sources_agree(capsys):
    _, a, _ = run(capsys, "zpoly", "--n", "3")
    _, b, _ = run(capsys, "zpoly", "--n", "3", "--source", "enumeration")
    assert json.loads(a)["terms"] == json.loads(b)["terms"]


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--format", "csv")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 1 + 7


@pytest.mark.parametrize(
    "argv",
    [
        ["count"],
        ["family", "--kind", "w", "--n", "2"],
        ["enumerate", "--n", "9"],
        ["free-energy", "--zeta", "abc"],
        ["free-energy", "--zeta", "0"],
        ["free-energy", "--nmax", "20"],
        ["verify", "--jobs", "0"],
        ["theta-check", "--p", "1.5"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_verify_deterministic_across_jobs(capsys):
    _, a, _ = run(capsys, "verify", "--suite", "theta", "--nmax", "2", "--seed", "4")
    _, b, _ = run(capsys, "verify", "--suite", "theta", "--nmax", "2", "--seed", "4", "--jobs", "3")
    assert a == b
    assert json.loads(a)["failed"] == 0


def test_verify_tables(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "tables", "--nmax", "8", "--format", "csv")
    assert code == EXIT_OK
    assert all(line.endswith(",1") for line in out.strip().splitlines()[1:])


def test_theta_check_fail_exit(capsys):
    code, out, _ = run(capsys, "theta-check", "--check", "determinant", "--n", "2", "--tol", "0")
    assert code in (EXIT_OK, EXIT_FAIL)
    assert json.loads(out)["pass"] == (code == EXIT_OK)


def test_theta_check_modular(capsys):
    code, out, _ = run(capsys, "theta-check", "--check", "modular", "--p", "0.1,0.2")
    assert code == EXIT_OK
    assert max(json.loads(out)["residuals"].values()) < 1e-10


def test_zeros_writes_csv_and_figure(tmp_path, capsys):
    target = tmp_path / "zeros.csv"
    code, _, _ = run(capsys, "zeros", "--n", "5", "--format", "csv", "--output", str(target))
    assert code == EXIT_OK
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "re,im" and len(lines) == 16
    assert (tmp_path / "zeros.png").stat().st_size > 0


def test_free_energy_figure(tmp_path, capsys):
    target = tmp_path / "fe.json"
    code, _, _ = run(capsys, "free-energy", "--zeta", "1", "--nmax", "12", "--output", str(target))
    obj = json.loads(target.read_text())
    assert len(obj["f_sequence"]) == 12
    assert code == (EXIT_OK if obj["abs_error"] <= 2e-2 else EXIT_FAIL)
    assert (tmp_path / "fe.png").exists()


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "threecolour", "family", "--kind", "q", "--n", "5", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.splitlines() == ["k,num,den", "0,6,1", "1,-4,1", "2,1,1"]
