import pytest

from threecolour.errors import ThreeColourError
from threecolour.suites import SUITES, row, run_suite


@pytest.mark.parametrize("name", [s for s in SUITES if s != "identities"])
def test_suite_passes_small(name):
    rows = run_suite(name, 3)
    assert rows
    failed = [r for r in rows if not r["pass"]]
    assert not failed, failed[:3]
    assert all(set(r) == {"suite", "check", "n", "pass", "detail"} for r in rows)


def test_identities_suite_small():
    rows = run_suite("identities", 1, seed=2)
    assert rows and all(r["pass"] for r in rows)


def test_suite_errors_become_rows(monkeypatch):
    def boom(nmax, seed, jobs):
        raise ThreeColourError("forced")

    monkeypatch.setitem(SUITES, "tables", boom)
    rows = run_suite("tables", 3)
    assert rows == [row("tables", "suite-error", None, False, {"error": "ThreeColourError: forced"})]
