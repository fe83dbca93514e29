"""The 13 acceptance criteria, run in order against one shared context.

Each criterion prints a single PASS/FAIL line with its wall time.
"""

import pytest

from cubic27 import verify as V

CTX = V.Context()


@pytest.mark.parametrize("crit", V.CRITERIA, ids=lambda c: "criterion_%02d" % c.number)
def test_criterion(crit, capsys):
    rep = crit.run(CTX)
    state = "PASS" if rep.passed else "FAIL"
    with capsys.disabled():
        print("\n[criterion %2d] %s  %s  (%.2f s)" % (crit.number, state, crit.title, rep.timings["total"]))
    assert rep.passed, "\n".join(c.message() + " " + repr(c.detail) for c in rep.failures())
