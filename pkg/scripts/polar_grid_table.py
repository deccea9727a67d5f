"""Tabulate predicted against computed types of Tr(alpha f) over a parameter grid.

    python3 scripts/polar_grid_table.py --family quadratic
"""
import argparse
import collections

from fieldred import polar


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", choices=["quadratic", "sesquilinear", "both"], default="both")
    ap.add_argument("--mismatches", action="store_true", help="list disagreeing cases")
    args = ap.parse_args()
    grids = []
    if args.family in ("quadratic", "both"):
        grids.append(("quadratic", polar.quadratic_grid()))
    if args.family in ("sesquilinear", "both"):
        grids.append(("sesquilinear", polar.sesquilinear_grid()))
    for name, cases in grids:
        table = collections.Counter((c.q, c.t, c.r, c.kind, c.computed) for c in cases)
        bad = [c for c in cases if not c.ok]
        print(f"== {name}: {len(cases)} cases, {len(cases) - len(bad)} agree")
        print(f"{'q':>3} {'t':>2} {'r':>2}  {'input':18s} {'reduced':18s} count")
        for (q, t, r, kind, comp), n in sorted(table.items()):
            print(f"{q:>3} {t:>2} {r:>2}  {kind:18s} {comp:18s} {n}")
        if args.mismatches:
            for c in bad:
                print("MISMATCH", c)


if __name__ == "__main__":
    main()
