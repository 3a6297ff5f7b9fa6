"""Long-time power law of a Breit-Wigner line cut off at a mass threshold.

Prints P0(t) on a log grid with the local log-log slope, from both the
adaptive engine and the midpoint oracle.

    python3 scripts/khalfin_tail.py --gamma 0.1 --threshold 0
"""

import argparse

import numpy as np

from boostdecay import masspec
from boostdecay.amplitude import amplitude_at
from boostdecay.quadrature import riemann_oracle


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=float, default=1.0)
    ap.add_argument("--gamma", type=float, default=0.1)
    ap.add_argument("--threshold", type=float, default=0.0)
    ap.add_argument("--decades", type=float, nargs=2, default=[0.0, 4.0],
                    help="log10 range of Gamma t")
    ap.add_argument("--points", type=int, default=17)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args(argv)

    w = masspec.truncated_breit_wigner(args.M, args.gamma, args.threshold)
    ts = np.logspace(*args.decades, args.points) / w.Gamma
    p = np.array([abs(amplitude_at(w, float(t))[0]) ** 2 for t in ts])
    slope = np.gradient(np.log(p), np.log(ts))
    print(f"{'Gamma t':>10s} {'P0':>12s} {'exp(-Gamma t)':>14s} {'slope':>8s} {'oracle P0':>12s}")
    for t, pi, si in zip(ts, p, slope):
        oracle = "" if args.no_oracle else f"{abs(riemann_oracle(w, float(t)).value) ** 2:12.5e}"
        print(f"{w.Gamma * t:10.3g} {pi:12.5e} {np.exp(-w.Gamma * t):14.5e} {si:8.4f} {oracle}")


if __name__ == "__main__":
    main()
