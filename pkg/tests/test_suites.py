import pytest

from blochlab.suites import SUITES, run_suite


def test_suite_registry_names():
    assert set(SUITES) == {"lemma21", "gershgorin", "asymptotics", "borg1d", "counting"}


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("spectral")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes(name):
    results = run_suite(name, seed=0)
    assert results, "suite produced no checks"
    for check in results:
        assert check.passed, f"{check.name}: residual {check.residual:.3e} ({check.detail})"
        assert check.residual >= 0.0
