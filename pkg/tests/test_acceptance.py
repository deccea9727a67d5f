"""One test per acceptance criterion, each run through the verification harness.

Every test prints a single PASS/FAIL line with the wall time against its limit.
The two-planes sweep runs with the large budget so both q = 5 and q = 7 are
exercised; everything else uses the budget from FIELDRED_BUDGET (default medium).
"""
import pytest

from fieldred import harness
from fieldred.config import Budget

ORDERED = sorted(harness.SUITES, key=lambda n: harness.SUITES[n][0])
LARGE_ONLY = {"two-planes"}


@pytest.mark.parametrize("suite", ORDERED)
def test_criterion(suite, capsys):
    crit, _, limit = harness.SUITES[suite]
    budget = Budget.named("large") if suite in LARGE_ONLY else Budget.resolve()
    rep = harness.verify_suite(suite, budget)
    ok = rep.passed and rep.wall_time < limit
    skipped = [c.name for c in rep.checks if c.status == harness.SKIP]
    with capsys.disabled():
        line = (f"\ncriterion {crit:2d} {suite:24s} {'PASS' if ok else 'FAIL'}"
                f"  {rep.wall_time:7.2f}s / {limit}s  budget={budget.name}  checks={len(rep.checks)}")
        if skipped:
            line += f"  skipped={skipped}"
        print(line)
    assert rep.passed, rep.to_text()
    assert rep.wall_time < limit
    assert not skipped, rep.to_text()
