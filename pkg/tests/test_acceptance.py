"""Acceptance battery: every promised verification at its stated bound.

One pass/fail line is printed per criterion (run pytest with -s or -v to see
them).  Criterion 5 carries a documented defect of the published three-term
functional sequence: in degree 4 the dimensions are 2 -> 2 -> 1, so no exact
sequence exists and the criterion's exactness clause cannot pass as stated.
It is asserted faithfully here rather than weakened; see the repository notes
for the analysis.  All dimension closed forms inside criterion 5 do hold.
"""

import pytest

from kconn.verify import ALL_CRITERIA, run_acceptance


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_acceptance()}


@pytest.mark.parametrize("number", [fn.__name__.split("_")[1] for fn in ALL_CRITERIA])
def test_criterion(results, number):
    res = results[int(number)]
    status = "PASS" if res.passed else "FAIL"
    line = f"{status} criterion {res.number}: {res.title}"
    if res.detail:
        line += f" [{res.detail}]"
    print(line)
    assert res.passed, line
