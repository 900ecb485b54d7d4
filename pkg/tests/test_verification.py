import pytest

from aperylike.verification import AFFECTED_FIXTURE, GROUPS, build_tasks, run_suite


def test_groups_cover_all_tasks():
    assert {group for group, _, _ in build_tasks()} == set(GROUPS)


def test_unknown_group():
    with pytest.raises(ValueError):
        build_tasks(only=["nope"])


@pytest.mark.parametrize("norm", ["formula", "recurrence"])
def test_fast_groups_pass(norm):
    records = run_suite(norm, ["tables", "theorem2", "gf", "special"])
    assert records and not any(r.failed for r in records)


def test_operator_records_include_observed():
    records = run_suite("formula", ["operators"])
    observed = [r for r in records if r.status == "observed"]
    assert {r.sequence for r in observed} == {"eta", "s18"}
    assert not any(r.failed for r in records)


def test_affected_fixture():
    assert AFFECTED_FIXTURE["eta"] == ((1, 10, 70, 550), (1, 5, 35, 275))
