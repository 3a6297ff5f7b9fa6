"""Rest, naive-boost and heuristic survival curves side by side.

    python3 scripts/contrast_curves.py --family breit_wigner --v 0.6 --out contrast.csv
"""

import argparse
import csv
import sys

from boostdecay import masspec
from boostdecay.amplitude import Boost, survival_heuristic, survival_naive_boost, survival_rest
from boostdecay.quadrature import TimeGrid


def build(family, M, width, threshold):
    if family == "gaussian":
        return masspec.gaussian(M, width)
    if family == "breit_wigner_truncated":
        return masspec.truncated_breit_wigner(M, width, threshold)
    return masspec.breit_wigner(M, width)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="breit_wigner",
                    choices=["breit_wigner", "breit_wigner_truncated", "gaussian"])
    ap.add_argument("--M", type=float, default=1.0)
    ap.add_argument("--width", type=float, default=1.0, help="Gamma, or sigma_m for gaussian")
    ap.add_argument("--threshold", type=float, default=0.0)
    ap.add_argument("--v", type=float, default=0.6)
    ap.add_argument("--t-stop", type=float, default=5.0)
    ap.add_argument("--points", type=int, default=51)
    ap.add_argument("--out", help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    dist = build(args.family, args.M, args.width, args.threshold)
    boost = Boost(args.v)
    grid = TimeGrid(0.0, args.t_stop, args.points)
    curves = [survival_rest(dist, grid), survival_naive_boost(dist, boost, grid),
              survival_heuristic(dist, boost, grid)]

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(fh)
    writer.writerow(["t"] + [c.treatment for c in curves])
    for i, t in enumerate(grid.times()):
        writer.writerow([format(t, ".17g")] + [format(c.values[i], ".17g") for c in curves])
    if args.out:
        fh.close()
        print(f"gamma = {boost.gamma:.6g}; wrote {args.out}")


if __name__ == "__main__":
    main()
