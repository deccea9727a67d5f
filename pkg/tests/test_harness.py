import json

import pytest

from fieldred import harness
from fieldred.config import Budget, BudgetExceeded


def test_report_status_and_witness():
    rep = harness.VerificationReport("demo", 0)
    rep.add("fine", True, {"n": 1})
    assert rep.passed and not rep.skipped
    rep.skip("big", "too large")
    assert rep.passed and rep.skipped
    rep.add("broken", False, {"n": 2})
    assert not rep.passed
    d = rep.to_dict()
    assert d["status"] == "fail" and d["checks"][-1]["witness"] == {"n": 2}
    assert "wall_time" not in d and "wall_time" in rep.to_dict(timing=True)


def test_json_is_deterministic():
    a = harness.verify_suite("segre-spreads", Budget.named("small"))
    b = harness.verify_suite("segre-spreads", Budget.named("small"))
    assert a.to_json() == b.to_json()
    assert json.loads(a.to_json())["status"] == "pass"


def test_every_suite_is_registered_once():
    crits = sorted(c for c, _, _ in harness.SUITES.values())
    assert crits == list(range(1, 14))


def test_budget_exhaustion_becomes_a_skip(monkeypatch):
    def boom(budget, rep):
        raise BudgetExceeded("things", 10, 1)
    monkeypatch.setitem(harness.SUITES, "segre-spreads", (2, boom, 5))
    rep = harness.verify_suite("segre-spreads")
    assert rep.skipped and rep.passed


def test_budget_resolution(monkeypatch):
    monkeypatch.delenv("FIELDRED_BUDGET", raising=False)
    assert Budget.resolve("small").name == "small"
    monkeypatch.setenv("FIELDRED_BUDGET", "large")
    assert Budget.resolve("small").name == "large"
    with pytest.raises((KeyError, ValueError)):
        Budget.named("huge")


def test_unknown_suite():
    with pytest.raises(KeyError):
        harness.verify_suite("nope")
