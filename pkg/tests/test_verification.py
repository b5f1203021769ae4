import pytest

from ospq.verification import SUITES, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass(tables, suite):
    results = run_suite(suite, tables, seed=3, forests=5)
    assert results
    failed = [r.name for _, r in results if not r.passed]
    assert not failed


def test_unknown_suite(t12):
    with pytest.raises(KeyError):
        run_suite("nope", t12)
