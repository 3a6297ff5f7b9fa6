"""Command-line front end.

    boostdecay run SCENARIO [--out DIR] [--print-normalized]
    boostdecay compare SCENARIO --a T --b T
    boostdecay regime --M x --gamma x (--sigma-p x | --sigma-x x) [--v x] [--lab]

Exit status: 0 success, 2 invalid scenario or arguments, 3 quadrature did
not converge.  The quadrature tolerance can be overridden with the
BOOSTDECAY_QUAD_TOL environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .amplitude import survival_heuristic, survival_naive_boost, survival_rest
from .errors import BoostDecayError, QuadratureNonConvergence, ScenarioError
from .quadrature import default_tol, riemann_oracle
from .regimes import check_regime, check_regime_lab, predicted_gap
from .scenario import Scenario, load_scenario
from .wavepacket import (WavepacketScenario, survival_wavepacket_approx,
                         survival_wavepacket_exact)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONCONVERGENCE = 3


class TreatmentFailed(Exception):
    def __init__(self, treatment, exc):
        super().__init__(f"treatment {treatment!r}: {exc}")
        self.treatment = treatment
        self.exc = exc


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _wavepacket(scn: Scenario) -> WavepacketScenario:
    return WavepacketScenario(scn.dist, scn.packet, scn.boost, scn.dimension, warn=False)


def compute_treatment(scn: Scenario, treatment: str, tol=None) -> tuple[np.ndarray, np.ndarray]:
    try:
        if treatment == "rest":
            c = survival_rest(scn.dist, scn.grid, tol)
        elif treatment == "naive":
            c = survival_naive_boost(scn.dist, scn.boost, scn.grid, tol)
        elif treatment == "heuristic":
            c = survival_heuristic(scn.dist, scn.boost, scn.grid, tol)
        elif treatment == "wp_exact":
            c = survival_wavepacket_exact(_wavepacket(scn), scn.grid, tol)
        elif treatment == "wp_approx":
            c = survival_wavepacket_approx(_wavepacket(scn), scn.grid, tol)
        elif treatment == "oracle":
            vals, errs = [], []
            for t in scn.grid.times():
                r = riemann_oracle(scn.dist, float(t))
                a, e = abs(r.value), r.abs_error_estimate
                vals.append(a * a)
                errs.append(2 * a * e + e * e)
            return np.array(vals), np.array(errs)
        else:
            raise ScenarioError(f"unknown treatment {treatment!r}")
    except QuadratureNonConvergence as exc:
        raise TreatmentFailed(treatment, exc) from exc
    return c.values, c.error_estimates


def regime_dict(scn: Scenario):
    if scn.packet is None:
        return None
    return check_regime(scn.dist.M, scn.dist.Gamma, scn.packet.sigma_p, scn.boost.v).to_dict()


def run_scenario(scn: Scenario, tol=None) -> dict:
    columns = {}
    for t in scn.treatments:
        columns[t] = compute_treatment(scn, t, tol)
    return columns


def render(scn: Scenario, columns: dict, tol: float) -> str:
    times = scn.grid.times()
    meta = {
        "tool": "boostdecay",
        "version": __version__,
        "scenario": scn.name,
        "scenario_sha256": scn.digest(),
        "quad_tol": tol,
        "unit_note": scn.unit_note,
        "regime": regime_dict(scn),
    }
    header = ["t"]
    for t in scn.treatments:
        header += [t, f"{t}_err"]
    rows = []
    for i, t in enumerate(times):
        row = [t]
        for name in scn.treatments:
            vals, errs = columns[name]
            row += [vals[i], errs[i]]
        rows.append(row)

    if scn.output_format == "json":
        doc = {"metadata": meta, "columns": header,
               "rows": [[float(x) for x in row] for row in rows]}
        return json.dumps(doc, indent=1) + "\n"
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]
    lines.append(",".join(header))
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    scn = load_scenario(args.scenario)
    if args.print_normalized:
        sys.stdout.write(scn.normalized_text())
        return EXIT_OK
    tol = default_tol()
    columns = run_scenario(scn, tol)
    text = render(scn, columns, tol)
    path = scn.output_path
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, path)
    elif os.path.dirname(path):
        os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    print(f"wrote {path}")
    return EXIT_OK


def compare_columns(scn: Scenario, a: str, b: str, tol=None) -> dict:
    for t in (a, b):
        if t not in scn.treatments:
            raise ScenarioError(f"treatment {t!r} is not in scenario treatments "
                                f"{list(scn.treatments)}")
    va, ea = compute_treatment(scn, a, tol)
    vb, eb = (va, ea) if b == a else compute_treatment(scn, b, tol)
    gap = np.abs(va - vb)
    i = int(gap.argmax())
    times = scn.grid.times()
    pred = None
    if scn.packet is not None:
        pred = predicted_gap(scn.dist, scn.packet.sigma_p, scn.boost.v)
    return {
        "scenario": scn.name,
        "a": a,
        "b": b,
        "max_abs_gap": float(gap[i]),
        "mean_abs_gap": float(gap.mean()),
        "t_at_max_gap": float(times[i]),
        "error_at_max_gap": float(ea[i] + eb[i]),
        "predicted_gap": pred,
    }


def cmd_compare(args) -> int:
    scn = load_scenario(args.scenario)
    summary = compare_columns(scn, args.a, args.b, default_tol())
    print(json.dumps(summary, indent=1))
    return EXIT_OK


def cmd_regime(args) -> int:
    if (args.sigma_p is None) == (args.sigma_x is None):
        raise ScenarioError("give exactly one of --sigma-p and --sigma-x")
    if args.lab:
        if args.sigma_x is None:
            raise ScenarioError("--lab expects --sigma-x in cm")
        rep = check_regime_lab(args.M, args.gamma, args.sigma_x, args.v)
    else:
        sigma_p = args.sigma_p if args.sigma_p is not None else 1.0 / args.sigma_x
        rep = check_regime(args.M, args.gamma, sigma_p, args.v)
    print(json.dumps(rep.to_dict(), indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boostdecay",
        description="Survival probability of unstable systems at rest and in motion")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evaluate the treatments of a scenario file")
    p.add_argument("scenario")
    p.add_argument("--out", help="directory for the output table")
    p.add_argument("--print-normalized", action="store_true",
                   help="print the validated scenario and exit")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="gap between two treatments of a scenario")
    p.add_argument("scenario")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("regime", help="check Gamma << sigma_p << M")
    p.add_argument("--M", type=float, required=True, help="mass")
    p.add_argument("--gamma", type=float, required=True, help="decay width")
    p.add_argument("--sigma-p", type=float, help="momentum spread")
    p.add_argument("--sigma-x", type=float, help="position spread (1/sigma_p)")
    p.add_argument("--v", type=float, default=0.0, help="speed, fraction of c")
    p.add_argument("--lab", action="store_true",
                   help="read M in MeV, gamma in eV and sigma-x in cm")
    p.set_defaults(func=cmd_regime)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except TreatmentFailed as exc:
        print(f"error: quadrature did not converge in {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except BoostDecayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
