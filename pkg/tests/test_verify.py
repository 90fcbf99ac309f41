import pytest

from extclifford.verify import SUITES, run_all, run_suite


def test_all_suites_pass_d3(fields):
    results = run_all(fields[3])
    assert [r.suite for r in results] == list(SUITES)
    assert all(r.passed and r.exhaustive for r in results)


def test_sampling_is_seeded(fields):
    a = run_suite("covariance", fields[5], samples=40, seed=1)
    b = run_suite("covariance", fields[5], samples=40, seed=1)
    assert a == b and a.checked == 40 and not a.exhaustive
    assert a.as_dict()["counterexample"] is None


def test_unknown_suite(fields):
    with pytest.raises(KeyError):
        run_suite("nope", fields[3])
