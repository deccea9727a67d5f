"""Verification suites: each one re-derives a stated result by exhaustive
computation at small parameters and reports pass/fail with witnesses."""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import applications as app
from . import linset as ls
from . import polar
from .config import Budget, BudgetExceeded
from .gf import make_tower, prime_power
from .projspace import enumerate_arrays, make_space
from .reduction import (abb_design, desarguesian_spread, reduction_property_checks, make_context,
                        spread_via_conjugates, subgeometry_on_segre)

PASS, FAIL, SKIP = "pass", "fail", "skipped-budget"


@dataclass
class Check:
    name: str
    status: str
    detail: object = None
    witness: object = None

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.detail is not None:
            d["detail"] = self.detail
        if self.status == FAIL:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    suite: str
    criterion: int
    grid: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, name, ok, detail=None, witness=None):
        # a failing check must carry something to look at
        if not ok and witness is None:
            witness = detail
        self.checks.append(Check(name, PASS if ok else FAIL, detail, witness))

    def skip(self, name, reason):
        self.checks.append(Check(name, SKIP, reason))

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    @property
    def skipped(self):
        return any(c.status == SKIP for c in self.checks)

    def to_dict(self, timing=False):
        d = {"suite": self.suite, "criterion": self.criterion, "grid": self.grid,
             "checks": [c.to_dict() for c in self.checks],
             "status": PASS if self.passed else FAIL}
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, timing=False):
        return json.dumps(_plain(self.to_dict(timing)), sort_keys=True, indent=2)

    def to_text(self, timing=False):
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion:2d} {self.suite}"
        if timing:
            head += f" ({self.wall_time:.2f}s)"
        lines = [head]
        for c in self.checks:
            line = f"    {c.status:14s} {c.name}"
            if c.detail is not None:
                line += f": {json.dumps(_plain(c.detail), sort_keys=True)}"
            lines.append(line)
            if c.status == FAIL:
                lines.append(f"        witness: {json.dumps(_plain(c.witness), sort_keys=True)}")
        return "\n".join(lines)


def _plain(x):
    """JSON-compatible copy with numpy scalars and tuples converted."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, float):
        return round(x, 6)
    return x


# -- suites ------------------------------------------------------------------------

def suite_reduction_properties(budget: Budget, rep: VerificationReport):
    grid = [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2)]
    expected = {(2, 2, 2): 5, (2, 2, 3): 10, (3, 2, 2): 21, (2, 3, 2): 9}
    rep.grid = {"contexts": grid}
    for r, t, q in grid:
        ctx = make_context(r, t, q)
        res = reduction_property_checks(ctx, budget.enumeration)
        for prop, (ok, wit) in sorted(res.items()):
            rep.add(f"({r},{t},{q}) {prop}", ok, witness=wit)
        size = len(desarguesian_spread(ctx, budget.enumeration))
        want = (q ** (r * t) - 1) // (q ** t - 1)
        rep.add(f"({r},{t},{q}) spread size", size == want == expected[(r, t, q)],
                {"size": size, "expected": want})


def suite_segre_spreads(budget: Budget, rep: VerificationReport):
    ctx = make_context(2, 2, 2)
    rep.grid = {"context": (2, 2, 2)}
    D = desarguesian_spread(ctx, budget.enumeration)
    chk = D.check()
    rep.add("D_{2,2,2} is a spread", chk.ok, {"size": chk.size}, chk.witness)
    C, fixed = spread_via_conjugates(ctx)
    cc = C.check()
    rep.add("conjugate-span spread is a spread", cc.ok and fixed,
            {"size": cc.size, "frobenius_fixed": fixed}, cc.witness)
    rep.add("conjugate-span spread equals D_{2,2,2}", C.elements == D.elements)
    design = abb_design(D)
    ok, pairs = design.verify()
    rep.add("translation design is 2-(16,4,1)",
            ok and pairs == 120 and design.v == 16 and design.k == 4,
            {"v": design.v, "k": design.k, "blocks": len(design.blocks), "pairs": pairs})


def suite_segre_variety(budget: Budget, rep: VerificationReport):
    rep.grid = {"contexts": [(2, 2, 2), (3, 2, 3)]}
    for r, t, q in rep.grid["contexts"]:
        res = subgeometry_on_segre(make_context(r, t, q))
        rep.add(f"PG({r - 1},{q}) in PG({r - 1},{q ** t}) reduces onto the Segre variety", res.ok,
                {"subspaces": len(res.subspaces), "points_checked": res.points_checked},
                res.failures[:3])


_POLAR_CACHE = {}


def _polar_cases():
    if "cases" not in _POLAR_CACHE:
        _POLAR_CACHE["cases"] = (polar.quadratic_grid(), polar.sesquilinear_grid())
    return _POLAR_CACHE["cases"]


def suite_polar_tables(budget: Budget, rep: VerificationReport):
    quad, ses = _polar_cases()
    rep.grid = {"quadratic": {"q": [2, 3, 5], "t": [2, 3], "r": [1, 2, 3], "max_rt": 8},
                "sesquilinear": {"q": [2, 3, 4, 5], "t": [2, 3, 4], "max_rt": 8}}
    for fam, cases in (("quadratic", quad), ("hermitian/alternating", ses)):
        bad = [c for c in cases if c.predicted != c.computed]
        rep.add(f"{fam}: computed type equals predicted type", not bad,
                {"cases": len(cases)}, [vars(c) for c in bad[:3]])
        bad = [c for c in cases if c.nondegenerate_predicted != c.nondegenerate_computed]
        rep.add(f"{fam}: nondegeneracy predicate", not bad, {"cases": len(cases)},
                [vars(c) for c in bad[:3]])
    atyp = sum(c.computed == "atypical" for c in ses)
    rep.add("atypical rows exercised", atyp > 0, {"atypical_cases": atyp})


def suite_quadric_counts(budget: Budget, rep: VerificationReport):
    quad, ses = _polar_cases()
    seen = [c for c in quad + ses if c.zero_count_ok is not None]
    bad = [c for c in seen if not c.zero_count_ok]
    rep.grid = {"source": "quadrics produced by the polar-tables grid, plus standard forms"}
    rep.add("reduced quadrics: zero counts match closed forms", not bad and len(seen) > 0,
            {"quadrics": len(seen)}, [vars(c) for c in bad[:3]])
    mism = []
    n_std = 0
    for q in (2, 3, 4, 5):
        F = make_tower(*prime_power(q))
        for n in range(2, 7):
            kinds = ("hyperbolic", "elliptic") if n % 2 == 0 else ("parabolic",)
            for kind in kinds:
                res = polar.classify(polar.standard_form(kind, n, F))
                if res.label == "degenerate":
                    continue
                n_std += 1
                if res.label != kind or res.zero_count != polar.zero_count_formula(kind, n, q):
                    mism.append((q, n, kind, res.label, res.zero_count))
    rep.add("standard quadrics: label and zero count", not mism, {"quadrics": n_std}, mism)


def suite_linset_weights(budget: Budget, rep: VerificationReport):
    ctx = make_context(2, 3, 2)
    rep.grid = {"context": (2, 3, 2), "rank": 3}
    mats = enumerate_arrays(ctx.small, ctx.n, 3, budget.enumeration)
    counts = ls.batch_weight_counts(ctx, mats)
    W = ls.weights_from_counts(2, counts)
    rep.add("number of rank-3 subspaces", len(mats) == 1395, {"count": len(mats)})
    bad, sizes, club_hist, scat = [], {}, set(), set()
    for i, w in enumerate(W):
        w = w[w > 0]
        vals, cnt = np.unique(w, return_counts=True)
        hist = {int(a): int(b) for a, b in zip(vals, cnt)}
        ids = ls.weight_identities(hist, len(w), 3, 2)
        if not all(ids.values()):
            bad.append((i, hist))
        sizes[len(w)] = sizes.get(len(w), 0) + 1
        if len(w) == 5:
            club_hist.add(tuple(sorted(hist.items())))
        if (w == 1).all() and len(w) > 1:
            scat.add(len(w))
    rep.add("weight identities for every subspace", not bad, {"size_counts": sizes},
            bad[:3])
    rep.add("clubs have size 5 and histogram (4,1)", club_hist == {((1, 4), (2, 1))},
            {"club_histograms": sorted(club_hist)})
    rep.add("scattered sets have size 7", scat == {7}, {"scattered_sizes": sorted(scat)})


def suite_scattered_bound(budget: Budget, rep: VerificationReport):
    rep.grid = {"contexts": [(2, 2, 2), (2, 2, 3)]}
    for r, t, q in rep.grid["contexts"]:
        ctx = make_context(r, t, q)
        found = {}
        for k in range(1, ctx.n + 1):
            mats = enumerate_arrays(ctx.small, ctx.n, k, budget.enumeration)
            counts = ls.batch_weight_counts(ctx, mats)
            found[k] = int((counts.max(axis=1) <= 1).sum())
        half = ctx.n // 2
        over = {k: v for k, v in found.items() if k > half and v}
        rep.add(f"({r},{t},{q}) no scattered set above rank rt/2", not over,
                {"scattered_by_rank": found}, over)
        rep.add(f"({r},{t},{q}) scattered sets of rank rt/2 exist", found[half] > 0,
                {"rank": half, "count": found[half]})


def all_sublines(F, q):
    space = make_space(F, 2)
    seen = set()
    for a, b, c in itertools.combinations(range(space.num_points), 3):
        pts = ls.subline_through(F, q, space.point(a), space.point(b), space.point(c))
        seen.add(tuple(sorted(space.index(p) for p in pts)))
    return sorted(seen)


def suite_subline_intersections(budget: Budget, rep: VerificationReport):
    q, t = 2, 4
    ctx = make_context(2, t, q)
    rep.grid = {"line": "PG(1,16)", "q": q, "rank": 3}
    subl = all_sublines(ctx.big, q)
    rep.add("number of GF(2)-sublines", len(subl) == 680, {"count": len(subl)})
    mats = enumerate_arrays(ctx.small, ctx.n, 3, budget.enumeration)
    counts = ls.batch_weight_counts(ctx, mats)
    rep.add("number of rank-3 subspaces", len(mats) == 97155, {"count": len(mats)})
    bits = np.int64(1) << np.arange(counts.shape[1], dtype=np.int64)
    masks = ((counts > 0).astype(np.int64) * bits).sum(axis=1)
    probes = [int(sum(1 << i for i in s)) for s in subl]
    inter = ls.intersection_counts(masks, probes)
    allowed = ls.subline_bound_values(q, 3)
    vals = sorted(int(v) for v in np.unique(inter))
    bad = sorted(set(vals) - allowed)
    wit = None
    if bad:
        i, j = np.argwhere(inter == bad[0])[0]
        wit = {"subline": subl[i], "subspace": mats[j].tolist(), "size": bad[0]}
    rep.add("intersection sizes lie in {0,...,min(q+1,k)} u {q+1}", not bad,
            {"pairs": int(inter.size), "sizes": vals}, wit)
    rep.add("every size 0..3 occurs", set(range(4)) <= set(vals), {"sizes": vals})


def suite_equivalence(budget: Budget, rep: VerificationReport):
    rep.grid = {"cases": ["clubs PG(1,8)", "scattered PG(1,8)", "scattered PG(1,16)",
                          "clubs PG(1,32)"]}
    for fam, t, want in (("clubs", 3, 1), ("scattered", 3, 1), ("scattered", 4, 1)):
        res = ls.equivalence_classes(fam, 2, t, "projective")
        rep.add(f"{fam} in PG(1,{2 ** t}): one PGL class", res.classes == want and res.witnesses_ok,
                {"classes": res.classes, "center_orbits": res.center_orbits,
                 "sets": sum(res.class_sizes)})
    semi = ls.equivalence_classes("clubs", 2, 5, "semilinear")
    proj = ls.equivalence_classes("clubs", 2, 5, "projective")
    rep.add("clubs in PG(1,32): one PGammaL class", semi.classes == 1 and semi.witnesses_ok,
            {"classes": semi.classes, "center_orbits": semi.center_orbits})
    rep.add("clubs in PG(1,32): at least two PGL classes", proj.classes >= 2 and proj.witnesses_ok,
            {"classes": proj.classes, "center_orbits": proj.center_orbits})


def suite_two_planes(budget: Budget, rep: VerificationReport):
    qs = [q for q in (5, 7) if q <= budget.two_planes_max_q]
    rep.grid = {"q": [5, 7], "budget": budget.name}
    for q in (5, 7):
        if q not in qs:
            rep.skip(f"q={q}", f"needs budget with two_planes_max_q >= {q}")
            continue
        ctx = make_context(2, 3, q)
        L = ls.LinearSet(ctx, ls.scattered_rank3(ctx))
        counts = ls.planes_through_points(L, budget.enumeration)
        bad = {k: v for k, v in counts.items() if v != 2}
        rep.add(f"q={q}: every point of pi lies on exactly two planes with the same B",
                not bad and ls.is_scattered(L),
                {"points": len(counts), "linear_set_size": L.size}, list(bad.items())[:3])


def suite_pseudoregulus(budget: Budget, rep: VerificationReport):
    rep.grid = {"r": 2, "t": 3, "q": 2, "rho": list(range(1, 8))}
    for rho in range(1, 8):
        L, _ = ls.build_L_rho_f(2, 3, 2, rho)
        pr = ls.pseudoregulus_of(L, budget.enumeration)
        s = pr.summary()
        ok = (L.rank == 6 and L.is_scattered() and s["secant_count"] == 9 and s["secants_disjoint"]
              and s["transversal_count"] == 2 and s["spectrum"] == [0, 1, 3, 7])
        rep.add(f"rho={rho}", ok, s)


def suite_blocking(budget: Budget, rep: VerificationReport):
    rep.grid = {"linear": [(3, 2, 2, 2), (3, 2, 3, 2)], "cone": (3, 2, 4, 2)}
    for n, t, q, k in rep.grid["linear"]:
        L, B = app.linear_blocking_set(n, t, q, k)
        r = app.is_blocking(B, k - 1, True, budget.enumeration)
        removal = _removal_recheck(B, k - 1, budget)
        rep.add(f"rank-{L.rank} linear set in PG({n - 1},{q ** t})",
                r.blocking and r.minimal and removal and app.dimension_certificate(n, t, k),
                {"size": r.size, "spaces": r.num_spaces, "minimal": r.minimal})
    F4 = make_tower(2, 2)
    cone = app.cone_blocking_set(app.baer_subplane(F4), 3, 2, 4, 2, budget=budget.enumeration)
    removal = _removal_recheck(cone.blocking_set, 1, budget)
    rep.add("cone over a Baer subplane in PG(2,16)",
            cone.report.blocking and cone.report.minimal and removal,
            {"size": cone.report.size, "spaces": cone.report.num_spaces,
             "cone_points": len(cone.cone_points),
             "tangents_per_base_point": sorted(set(cone.base_tangents.tolist()))})


def _removal_recheck(B, k, budget):
    """Literal re-check: B minus any single point is no longer blocking."""
    for b in B.points:
        rest = app.PointSetInstance(B.space, B.points[B.points != b])
        if app.is_blocking(rest, k, minimal=False, budget=budget.enumeration).blocking:
            return False
    return True


def suite_semifields(budget: Budget, rep: VerificationReport):
    rep.grid = {"fields": [4, 8, 9], "dickson": 81}
    for q in (4, 8, 9):
        tbl = app.field_table(q)
        r = app.check_semifield(tbl)
        full = all(len(v) == q for v in r.nuclei.values())
        rep.add(f"GF({q}) table", r.ok and full and all(r.nuclei_are_fields.values()),
                {"axioms": r.axioms})
    d = app.dickson_table()
    r = app.check_semifield(d)
    rep.add("Dickson order 81 axioms and properness",
            r.ok and r.proper and all(r.nuclei_are_fields.values()),
            {"axioms": r.axioms, "nuclei": {k: len(v) for k, v in r.nuclei.items()}}, r.witnesses)
    for name, tbl, comps in (("GF(4)", app.field_table(4), 5), ("Dickson 81", d, 82)):
        sp = app.semifield_spread(tbl)
        rep.add(f"{name} spread set", sp.partition_ok and sp.num_components == comps
                and sp.closed_ok and sp.invertible_ok,
                {"components": sp.num_components, "linear_set_points": len(sp.linear_set_points),
                 "l": sp.l})


SUITES = {
    "lemma-field-reduction": (1, suite_reduction_properties, 30),
    "segre-spreads": (2, suite_segre_spreads, 5),
    "segre-variety": (3, suite_segre_variety, 10),
    "polar-tables": (4, suite_polar_tables, 300),
    "quadric-counts": (5, suite_quadric_counts, 300),
    "linset-weights": (6, suite_linset_weights, 30),
    "scattered-bound": (7, suite_scattered_bound, 60),
    "subline-intersections": (8, suite_subline_intersections, 300),
    "equivalence": (9, suite_equivalence, 300),
    "two-planes": (10, suite_two_planes, 600),
    "pseudoregulus": (11, suite_pseudoregulus, 120),
    "blocking-sets": (12, suite_blocking, 300),
    "semifields": (13, suite_semifields, 180),
}


def verify_suite(name: str, budget: Budget | None = None) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    budget = budget or Budget.resolve()
    crit, fn, _ = SUITES[name]
    rep = VerificationReport(name, crit)
    t0 = time.perf_counter()
    try:
        fn(budget, rep)
    except BudgetExceeded as exc:
        rep.skip("budget", str(exc))
    rep.wall_time = time.perf_counter() - t0
    return rep


def verify_all(budget: Budget | None = None):
    return [verify_suite(n, budget) for n in sorted(SUITES, key=lambda n: SUITES[n][0])]
