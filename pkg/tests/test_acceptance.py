"""The full acceptance battery: one test per criterion, one PASS/FAIL line
each.  Run with -s (or look at the failure output) to see the lines."""

import pytest

from exgraph import acceptance


@pytest.mark.parametrize(
    "criterion",
    acceptance._CRITERIA,
    ids=[f"criterion_{i:02d}" for i in range(1, len(acceptance._CRITERIA) + 1)],
)
def test_criterion(criterion):
    res = criterion()
    print(res.line())
    assert res.passed, res.line()


def test_every_criterion_is_registered():
    assert len(acceptance._CRITERIA) == 13
    cids = [fn().cid for fn in acceptance._CRITERIA[:1]]
    assert cids == [1]
