import io
import json

import pytest

from fieldred.cli import dispatch, EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, _ = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_spread_lists_five_lines():
    code, out, _ = run("spread", "--r", "2", "--t", "2", "--q", "2", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["size"] == 5 and len(rep["elements"]) == 5
    assert rep["disjoint"] and rep["covering"]


@pytest.mark.parametrize("alpha", ["1", "2", "[0,1]", "[1,1]", "[2,2]"])
@pytest.mark.parametrize("gamma", ["1", "2"])
def test_polar_reduce_prediction_matches(alpha, gamma):
    code, out, _ = run("polar", "reduce", "--kind", "parabolic", "--q", "3", "--t", "2", "--r", "1",
                       "--alpha", alpha, "--gamma", gamma, "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["predicted"] == rep["computed"]


def test_polar_classify():
    code, out, _ = run("polar", "classify", "--kind", "quadratic", "--field", "2",
                       "--coeffs", "0,1,0,0;0,0,0,0;0,0,0,1;0,0,0,0", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["label"] == "hyperbolic" and rep["zero_count"] == 9


def test_field_arithmetic():
    code, out, _ = run("field", "--field", "3^2", "--op", "mul", "--a", "[1,1]", "--b", "[0,1]",
                       "--format", "json")
    assert code == EXIT_OK and json.loads(out)["result"] == "[1,0]"


def test_reduce_linset_segre_blocking_semifield():
    assert run("reduce", "--r", "2", "--t", "2", "--q", "2", "--subspace", "1,[0,1]")[0] == EXIT_OK
    assert run("segre", "--r", "2", "--t", "3", "--q", "2")[0] == EXIT_OK
    code, out, _ = run("linset", "--r", "2", "--t", "3", "--q", "2",
                       "--subspace", "1,0,0,0,0,0;0,1,0,0,0,0;0,0,0,1,0,0", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["club"]
    assert run("blocking", "--n", "3", "--t", "2", "--q", "2", "--k", "2")[0] == EXIT_OK
    assert run("semifield", "--field-order", "9")[0] == EXIT_OK


def test_semifield_table_file_with_zero_divisor(tmp_path):
    from fieldred.applications import field_table
    tbl = field_table(4)
    tbl.mul[2, 3] = 0
    path = tmp_path / "bad.txt"
    path.write_text(tbl.to_text())
    code, out, _ = run("semifield", "--table", str(path), "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_FAIL and not rep["axioms"]["S3"] and rep["witnesses"]["S3"] == [2, 3]


def test_verify_suite_text_and_json():
    code, out, _ = run("verify", "--suite", "lemma-field-reduction")
    assert code == EXIT_OK and out.startswith("[PASS]  1 lemma-field-reduction")
    code, out, _ = run("verify", "--suite", "segre-spreads", "--format", "json")
    assert code == EXIT_OK and json.loads(out)[0]["status"] == "pass"
    assert "wall_time" not in out


def test_timing_is_opt_in():
    _, out, _ = run("spread", "--r", "2", "--t", "2", "--q", "2", "--timing", "--format", "json")
    assert "wall_time" in json.loads(out)


@pytest.mark.parametrize("argv", [["bogus"], ["verify", "--suite", "nope"], ["field", "--field", "6"],
                                  ["field", "--field", "4", "--op", "add", "--a", "1"], []])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_budget_exhaustion_exit_code(monkeypatch):
    monkeypatch.setenv("FIELDRED_BUDGET", "small")
    code, out, _ = run("spread", "--r", "8", "--t", "2", "--q", "3")
    assert code == EXIT_BUDGET and "skipped-budget" in out

