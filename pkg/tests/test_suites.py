import pytest

from isopar.suites import SUITES, run_suite


def test_all_suites_pass_for_both_examples():
    rep = run_suite("all", "both", 0)
    assert rep.passed, rep.to_text()
    prefixes = {c.id.split(".")[0] for c in rep.checks}
    assert prefixes == {"h45", "fkm69"}
    suites = {c.id.split(".")[1] for c in rep.checks}
    assert suites == set(SUITES)


def test_cm_suite_has_two_checks():
    rep = run_suite("cm", "h45", 1)
    assert [c.id for c in rep.checks] == ["h45.cm.gradient", "h45.cm.laplacian"]
    assert rep.passed


def test_pq_suite_fkm69():
    rep = run_suite("pq", "fkm69", 0)
    assert rep.passed
    assert rep.checks[0].id == "fkm69.pq.sum"


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("everything", "both", 0)
