"""Cheap validate checks run directly (the CLI test covers run_all)."""

from landscape_init import validate


def test_painleve_check_passes(sol):
    res = validate.check_painleve(sol)
    assert res.passed, res.detail
    assert res.name == "painleve"


def test_log_density_check_passes(sol):
    res = validate.check_log_density(sol)
    assert res.passed, res.detail


def test_mu_c_recovery_check_passes():
    res = validate.check_mu_c_recovery()
    assert res.passed, res.detail


def test_check_result_fields():
    res = validate.CheckResult(name="x", passed=False, detail="d")
    assert (res.name, res.passed, res.detail) == ("x", False, "d")
