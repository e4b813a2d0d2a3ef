"""The verification suites themselves must pass, and their reporting
machinery must catch injected failures."""

import pytest

from ncinv.checks import SUITES, SuiteReport, run_suite


def test_all_suites_registered():
    assert sorted(SUITES) == [
        "actrule", "bridge", "closure", "deltaw", "embed", "products"]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_small_parameters(name):
    rep = run_suite(name, n=2, max_deg=3, trials=60, seed=3)
    assert rep.passed, rep.failures
    assert rep.cases > 0
    assert rep.failures == []
    assert rep.suite == name


def test_bridge_case_count_scales_with_trials():
    rep = run_suite("bridge", n=2, max_deg=2, trials=50, seed=0)
    # three identities per trial
    assert rep.cases == 150


def test_bridge_deterministic_across_runs():
    a = run_suite("bridge", n=3, max_deg=3, trials=40, seed=11)
    b = run_suite("bridge", n=3, max_deg=3, trials=40, seed=11)
    assert a.json_record() == b.json_record()


def test_run_suite_drops_none_kwargs():
    rep = run_suite("deltaw", n=2, max_deg=2, trials=None, seed=None)
    assert rep.passed


def test_run_suite_rejects_unknown_names():
    with pytest.raises(ValueError):
        run_suite("nosuchsuite")


def test_report_caps_recorded_failures():
    rep = SuiteReport("demo", True, 0)
    for i in range(50):
        rep.record("failure %d" % i)
    assert not rep.passed
    assert len(rep.failures) == 20


def test_json_record_shape():
    rep = run_suite("closure", n=2, max_deg=2)
    rec = rep.json_record()
    assert list(rec) == ["suite", "passed", "cases", "failures", "params"]
    assert rec["passed"] is True
