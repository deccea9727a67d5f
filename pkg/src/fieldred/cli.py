"""Command-line front end: ``python3 -m fieldred.cli <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import applications as app
from . import harness
from . import linset as ls
from . import polar
from .config import Budget, BudgetExceeded
from .gf import FieldError, make_tower, parse_element, parse_field_spec, prime_power, serialize_element
from .projspace import _split_row, from_text, to_text
from .reduction import desarguesian_spread, make_context, subgeometry_on_segre

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", choices=["small", "medium", "large"], default=None)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock times")

    p = argparse.ArgumentParser(prog="fieldred", description="Field reduction toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", parents=[common], help="field arithmetic")
    s.add_argument("--field", required=True, help="p^h, p^h:poly=c0,...,1 or q")
    s.add_argument("--op", choices=["add", "sub", "mul", "div", "inv", "trace", "norm", "frob"])
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--d", type=int, default=None, help="subfield degree for trace/norm/frob")

    def rtq(sp):
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)

    s = sub.add_parser("reduce", parents=[common], help="field-reduce a subspace")
    rtq(s)
    s.add_argument("--subspace", required=True, help="rows 'a,b;c,d' over GF(q^t)")

    s = sub.add_parser("spread", parents=[common], help="Desarguesian spread")
    rtq(s)

    s = sub.add_parser("segre", parents=[common], help="subgeometry onto the Segre variety")
    rtq(s)

    s = sub.add_parser("linset", parents=[common], help="linear set of a subspace")
    rtq(s)
    s.add_argument("--subspace", required=True, help="rows over GF(q) of length rt")

    s = sub.add_parser("polar", parents=[common], help="forms and their trace reduction")
    s.add_argument("action", choices=["classify", "reduce"])
    s.add_argument("--kind", required=True)
    s.add_argument("--field", help="field spec for classify")
    s.add_argument("--coeffs", help="matrix rows 'a,b;c,d' (upper triangular for quadratic)")
    s.add_argument("--sigma", type=int, default=0)
    s.add_argument("--n", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--alpha")
    s.add_argument("--gamma")

    s = sub.add_parser("blocking", parents=[common], help="linear and cone blocking sets")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--cone", choices=["line", "baer"], default=None, help="base of a cone construction")

    s = sub.add_parser("semifield", parents=[common], help="semifield axioms, nuclei and spread set")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", help="table file: 'p m' then N rows")
    g.add_argument("--dickson", type=int, metavar="Q", help="Dickson semifield of order Q^4")
    g.add_argument("--field-order", type=int, metavar="Q", help="multiplication table of GF(Q)")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", default="all", help="suite name or 'all'")
    return p


# -- helpers -------------------------------------------------------------------------

def _guard(q, n, budget):
    # point tables of PG(n-1, q) are allocated eagerly, so refuse before building them
    size = q ** n
    if size > budget.enumeration:
        raise BudgetExceeded("target vectors", size, budget.enumeration)


def _context(a, budget):
    _guard(a.q, a.r * a.t, budget)
    return make_context(a.r, a.t, a.q)


def _matrix(F, text):
    rows = [[parse_element(F, c) for c in _split_row(r)] for r in text.split(";") if r.strip()]
    return rows


def _elt(F, x):
    return int(x) if F.h == 1 else serialize_element(F, x)


def _plain(x):
    return harness._plain(x)


def _emit(report, fmt, out):
    report = _plain(report)
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for key in sorted(report):
        val = report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        out.write(f"{key}: {val}\n")


# -- commands ------------------------------------------------------------------------

def cmd_field(a, budget):
    F = parse_field_spec(a.field)
    rep = {"field": repr(F), "order": F.order, "modulus": list(F.modulus),
           "generator": _elt(F, F.generator)}
    if a.op:
        x = parse_element(F, a.a) if a.a is not None else None
        y = parse_element(F, a.b) if a.b is not None else None
        if x is None or (a.op in ("add", "sub", "mul", "div") and y is None):
            raise UsageError(f"--op {a.op} needs --a" + (" and --b" if a.op in ("add", "sub", "mul", "div") else ""))
        d = a.d if a.d is not None else 1
        res = {"add": lambda: F.add(x, y), "sub": lambda: F.sub(x, y), "mul": lambda: F.mul(x, y),
               "div": lambda: F.div(x, y), "inv": lambda: F.inv(x),
               "trace": lambda: F.trace(x, d), "norm": lambda: F.norm(x, d),
               "frob": lambda: F.frob(x, d)}[a.op]()
        rep["result"] = _elt(F, res)
    return rep, True


def cmd_reduce(a, budget):
    ctx = _context(a, budget)
    S = from_text(ctx.big, a.subspace, a.r)
    R = ctx.field_reduce(S)
    return {"source": to_text(S), "source_rank": S.rank, "image": to_text(R),
            "image_rank": R.rank}, R.rank == S.rank * a.t


def cmd_spread(a, budget):
    ctx = _context(a, budget)
    sp = desarguesian_spread(ctx, budget.enumeration)
    chk = sp.check()
    rep = {"elements": [to_text(e) for e in sp.elements], "size": chk.size,
           "expected_size": chk.expected_size, "disjoint": chk.disjoint,
           "covering": chk.covering, "equal_dims": chk.equal_dims}
    if chk.witness:
        rep["witness"] = chk.witness
    return rep, chk.ok


def cmd_segre(a, budget):
    res = subgeometry_on_segre(_context(a, budget))
    return {"ok": res.ok, "subspaces": len(res.subspaces), "points_checked": res.points_checked,
            "failures": res.failures[:5]}, res.ok


def cmd_linset(a, budget):
    ctx = _context(a, budget)
    U = from_text(ctx.small, a.subspace, ctx.n)
    L = ls.LinearSet(ctx, U)
    w = ls.weight_distribution(L)
    rep = {"rank": L.rank, "size": L.size, "histogram": w.histogram,
           "identities": w.identities, "scattered": L.is_scattered(), "club": L.is_club(),
           "points": [[_elt(ctx.big, x) for x in v] for v in L.point_vectors().tolist()],
           "weights": L.weights.tolist()}
    return rep, all(w.identities.values())


def cmd_polar(a, budget):
    if a.action == "classify":
        if not (a.field and a.coeffs):
            raise UsageError("polar classify needs --field and --coeffs")
        F = parse_field_spec(a.field)
        M = _matrix(F, a.coeffs)
        kind = a.kind if a.kind != "symplectic" else "alternating"
        f = polar.FormSpec(F, len(M), kind, M, a.sigma)
        res = polar.classify(f)
        rep = {"label": res.label, "witt_index": res.witt_index,
               "sign": res.sign if res.sign is not None else "n/a",
               "zero_count": res.zero_count, "radical_dim": res.radical_dim}
        if res.gamma is not None:
            rep["gamma"] = _elt(F, res.gamma)
        return rep, True
    for name in ("q", "t", "r", "alpha"):
        if getattr(a, name) is None:
            raise UsageError(f"polar reduce needs --{name}")
    _guard(a.q, a.r * a.t, budget)
    p, e = prime_power(a.q)
    F = make_tower(p, e * a.t)
    alpha = parse_element(F, a.alpha)
    gamma = parse_element(F, a.gamma) if a.gamma is not None else 1
    kind = "alternating" if a.kind == "symplectic" else a.kind
    f = polar.standard_form(kind, a.r, F, gamma) if kind == "parabolic" else \
        polar.standard_form(kind, a.r, F)
    sigma = F.h // 2 if kind == "hermitian" else None
    pred = polar.predicted_type(kind, a.r, a.t, a.q, alpha, gamma, F, sigma)
    g = polar.trace_compose(f, polar.TraceFunctional(alpha, a.q))
    res = polar.classify(g)
    rep = {"input": kind, "predicted": pred, "computed": res.label,
           "agree": pred == res.label, "witt_index": res.witt_index,
           "sign": res.sign if res.sign is not None else "n/a", "zero_count": res.zero_count}
    return rep, pred == res.label


def cmd_blocking(a, budget):
    _guard(a.q, a.n * a.t, budget)
    if a.cone:
        F = make_tower(*prime_power(a.q))
        base = app.plane_line(F) if a.cone == "line" else app.baer_subplane(F)
        res = app.cone_blocking_set(base, a.n, a.t, a.q, a.k, budget=budget.enumeration)
        r = res.report
        rep = {"construction": f"cone over {a.cone}", "cone_points": len(res.cone_points)}
    else:
        L, B = app.linear_blocking_set(a.n, a.t, a.q, a.k)
        r = app.is_blocking(B, a.k - 1, True, budget.enumeration)
        rep = {"construction": "linear", "rank": L.rank}
    rep.update({"size": r.size, "blocking": r.blocking, "minimal": r.minimal, "small": r.small,
                "redei": r.redei, "spaces_checked": r.num_spaces})
    return rep, bool(r.blocking and r.minimal)


def cmd_semifield(a, budget):
    if a.table:
        with open(a.table) as fh:
            tbl = app.SemifieldTable.from_text(fh.read())
    elif a.dickson:
        tbl = app.dickson_table(a.dickson)
    else:
        tbl = app.field_table(a.field_order)
    r = app.check_semifield(tbl)
    rep = {"order": tbl.order, "axioms": r.axioms, "witnesses": r.witnesses,
           "nuclei": {k: len(v) for k, v in r.nuclei.items()},
           "nuclei_are_fields": r.nuclei_are_fields, "proper": r.proper}
    if r.ok:
        sp = app.semifield_spread(tbl, r)
        rep["spread"] = {"components": sp.num_components, "partition": sp.partition_ok,
                         "invertible": sp.invertible_ok, "closed": sp.closed_ok,
                         "left_dimension": sp.l,
                         "linear_set_points": len(sp.linear_set_points),
                         "linear_set_weights": sorted(set(sp.linear_set_weights.tolist()))}
        return rep, sp.partition_ok and sp.invertible_ok
    return rep, False


COMMANDS = {"field": cmd_field, "reduce": cmd_reduce, "spread": cmd_spread, "segre": cmd_segre,
            "linset": cmd_linset, "polar": cmd_polar, "blocking": cmd_blocking,
            "semifield": cmd_semifield}


def _verify(a, budget, out):
    names = sorted(harness.SUITES, key=lambda n: harness.SUITES[n][0]) if a.suite == "all" \
        else [a.suite]
    for n in names:
        if n not in harness.SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {sorted(harness.SUITES)} or all")
    reports = [harness.verify_suite(n, budget) for n in names]
    if a.format == "json":
        out.write(json.dumps([_plain(r.to_dict(a.timing)) for r in reports],
                             sort_keys=True, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.to_text(a.timing) + "\n")
    if any(not r.passed for r in reports):
        return EXIT_FAIL, reports
    if any(r.skipped for r in reports):
        return EXIT_BUDGET if a.suite != "all" else EXIT_OK, reports
    return EXIT_OK, reports


def dispatch(argv, out=None, err=None):
    """Run a command; returns (exit status, report)."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_USAGE if exc.code else EXIT_OK), None
    try:
        budget = Budget.resolve(a.budget)
        if a.command == "verify":
            return _verify(a, budget, out)
        t0 = time.perf_counter()
        report, ok = COMMANDS[a.command](a, budget)
        report["status"] = "pass" if ok else "fail"
        if a.timing:
            report["wall_time"] = round(time.perf_counter() - t0, 3)
        _emit(report, a.format, out)
        return (EXIT_OK if ok else EXIT_FAIL), report
    except BudgetExceeded as exc:
        _emit({"status": "skipped-budget", "reason": str(exc)}, a.format, out)
        return EXIT_BUDGET, None
    except (UsageError, FieldError, ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE, None


def main(argv=None):
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
