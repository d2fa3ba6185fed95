"""The invariant suites and axiom checks shipped with the package."""
import pytest

from bipolar.catalog import CORE_BASES
from bipolar.fibrations import Check
from bipolar.verify import INVARIANTS, axiom_checks, base, guarded, run_suite


@pytest.mark.parametrize("name", sorted(INVARIANTS))
def test_invariant_suite(name):
    check = INVARIANTS[name]()
    assert check.ok, check.line()


@pytest.mark.parametrize("name", CORE_BASES)
def test_axioms_on_core_bases(name):
    for check in axiom_checks(base(name)):
        assert check.ok, check.line()


def test_guarded_turns_exceptions_into_failures():
    def boom():
        raise RuntimeError("nope")

    check = guarded("demo", boom)
    assert isinstance(check, Check) and not check.ok
    assert check.line().startswith("FAIL demo")


def test_core_suite_reports_every_check():
    lines = []
    results = run_suite("core", emit=lambda c: lines.append(c.line()))
    assert len(lines) == len(results) > 0
    assert all(c.ok for c in results), [c.line() for c in results if not c.ok]
