"""Acceptance suite: one printed PASS/FAIL line per criterion, runtime limits enforced."""

import pytest

from dynquant.acceptance import criteria

CRITERIA = criteria()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    result = criterion.run()
    with capsys.disabled():
        print("\n" + result.line())
        for case in result.cases:
            limit = f" (limit {case.limit:g} s)" if case.limit else ""
            print(f"    {'ok  ' if case.ok else 'FAIL'} {case.name} [{case.seconds:.2f} s{limit}]")
            if not case.ok:
                print(f"         {case.detail}")
    failed = [f"{c.name}: {c.detail}" for c in result.cases if not c.ok]
    assert not failed, failed
    if result.total_limit is not None:
        assert result.seconds < result.total_limit
    for case in result.cases:
        if case.limit is not None:
            assert case.seconds < case.limit, f"{case.name} took {case.seconds:.2f} s"


def test_all_criteria_present():
    assert [c.number for c in CRITERIA] == list(range(1, 14))
