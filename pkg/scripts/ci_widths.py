"""CI width of dynamic smoothing against static windows at their admissible M.

    python scripts/ci_widths.py --out results/ci
"""

import argparse
import csv
from pathlib import Path

from kzspectra.bounds import ci_comparison_curves
from kzspectra.plotting import render_ci_comparison

SCENARIOS = [(5000, 0.05), (5000, 0.01), (1000, 0.05), (1000, 0.01)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--out", type=Path, default=Path("results/ci"))
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    for n, pos in SCENARIOS:
        rows = ci_comparison_curves(n, pos, args.alpha)
        stem = f"n{n}_pos{pos:g}"
        with open(args.out / f"{stem}.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["series", "level", "window", "dof", "width"])
            w.writerows((r.series, r.level, r.window, f"{r.dof:.17g}", f"{r.width:.17g}") for r in rows)
        render_ci_comparison(rows, args.out / f"{stem}.svg", title=f"n={n}, PoS={pos}")
        print(f"wrote {stem}.csv and {stem}.svg")


if __name__ == "__main__":
    main()
