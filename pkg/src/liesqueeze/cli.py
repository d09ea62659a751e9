"""Command line front end.

    liesqueeze sweep  --model su11 --lambda 0.1,0.25,1 --state pcs --k 0.25 \\
                      --xi-abs 0.5 --phi 1.5707963 --tmax 26 --steps 2000 --out run.csv
    liesqueeze figure fig1a --out fig1a.csv
    liesqueeze matrix --model su2 --lambda 0.1,0.25,1 --tmax 10 --steps 100
    liesqueeze verify all

Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from liesqueeze.algebra import AlgebraKind, CouplingTriple, coefficient_set, matrix_from_coefficients
from liesqueeze.oracle import ConvergenceError
from liesqueeze.scenarios import (
    DEFAULT_STEPS,
    DEFAULT_TAIL_TOL,
    PRESET_IDS,
    Scenario,
    figure_preset,
    two_periods,
)
from liesqueeze.squeezing import IncompatibleStateError, sweep
from liesqueeze.states import (
    BarutGirardelloState,
    BlochState,
    CutoffError,
    PerelomovState,
    coefficients,
)
from liesqueeze.verification import SUITES, run_suite

CSV_HEADER = "t,vx,vy,kz,sx,sy,product,bound"
MATRIX_HEADER = "t," + ",".join(f"m{i}{j}" for i in range(1, 4) for j in range(1, 4))


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    # repr gives the shortest string that round-trips, independent of locale
    return repr(float(x))


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join(fmt(v) for v in (r.t, r.vx, r.vy, r.kz, r.sx, r.sy, r.product, r.bound)))
    return "\n".join(lines) + "\n"


def run(scenario: Scenario) -> str:
    """Evaluate a scenario and return the CSV text (also written to ``scenario.out``)."""
    if not isinstance(scenario.state, BlochState):
        # refuse states whose coefficient sequence cannot be resolved at tail_tol
        coefficients(scenario.state, scenario.tail_tol)
    text = records_to_csv(sweep(scenario.model, scenario.state, scenario.t_grid()))
    _emit(text, scenario.out)
    return text


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    with open(out, "w", newline="", encoding="ascii") as fh:
        fh.write(text)


def _add_model_args(p: argparse.ArgumentParser):
    p.add_argument("--model", choices=["su11", "su2"], default="su11")
    p.add_argument("--lambda", dest="couplings", default="0.1,0.25,1",
                   help="comma-separated couplings a1,a2,a3")


def _add_run_args(p: argparse.ArgumentParser, with_defaults: bool):
    p.add_argument("--tmax", type=float, default=None)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS if with_defaults else None)
    p.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL if with_defaults else None)
    p.add_argument("--out", default=None, help="output CSV path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liesqueeze", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate variances and squeezing factors on a time grid")
    _add_model_args(p)
    p.add_argument("--state", choices=["pcs", "bgcs", "bloch"], required=True)
    p.add_argument("--k", type=float, default=0.25, help="Bargmann index (pcs)")
    p.add_argument("--xi-abs", type=float, default=0.5)
    p.add_argument("--phi", type=float, default=0.0, help="xi = |xi| exp(-i phi), radians")
    p.add_argument("--n", type=float, default=2.0, help="index n (bgcs)")
    p.add_argument("--z-abs", type=float, default=1.0)
    p.add_argument("--z-arg", type=float, default=0.0)
    p.add_argument("--j", type=float, default=5.0, help="spin j (bloch)")
    p.add_argument("--mu-abs", type=float, default=0.5)
    p.add_argument("--mu-arg", type=float, default=0.0)
    _add_run_args(p, with_defaults=True)

    p = sub.add_parser("figure", help="run a figure preset")
    p.add_argument("preset", choices=PRESET_IDS)
    _add_run_args(p, with_defaults=False)

    p = sub.add_parser("matrix", help="dump the evolution matrix rows on a time grid")
    _add_model_args(p)
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=[*SUITES, "all"])
    return parser


def _state_from_args(args):
    if args.state == "pcs":
        return PerelomovState.from_polar(args.k, args.xi_abs, args.phi)
    if args.state == "bgcs":
        return BarutGirardelloState.from_polar(args.n, args.z_abs, args.z_arg)
    return BlochState.from_polar(args.j, args.mu_abs, args.mu_arg)


def _couplings(args) -> CouplingTriple:
    try:
        return CouplingTriple.parse(args.couplings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_sweep(args):
    c = _couplings(args)
    kind = AlgebraKind(args.model)
    try:
        state = _state_from_args(args)
        scenario = Scenario(
            coupling=c, kind=kind, state=state,
            t_max=args.tmax if args.tmax is not None else two_periods(c, kind),
            steps=args.steps, tail_tol=args.tail_tol, out=args.out,
        )
    except (ValueError, IncompatibleStateError) as exc:
        raise UsageError(str(exc)) from None
    run(scenario)
    return 0


def _cmd_figure(args):
    scenario = figure_preset(args.preset)
    changes = {k: v for k, v in (("t_max", args.tmax), ("steps", args.steps),
                                 ("tail_tol", args.tail_tol), ("out", args.out)) if v is not None}
    try:
        scenario = scenario.with_(**changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    run(scenario)
    return 0


def _cmd_matrix(args):
    c = _couplings(args)
    kind = AlgebraKind(args.model)
    if args.steps < 0 or not args.tmax > 0:
        raise UsageError("need --tmax > 0 and --steps >= 0")
    ts = np.linspace(0.0, args.tmax, args.steps + 1) if args.steps else np.zeros(1)
    ms = matrix_from_coefficients(coefficient_set(c, kind, ts), kind).reshape(ts.size, 9)
    lines = [MATRIX_HEADER]
    lines += [",".join(fmt(v) for v in (t, *row)) for t, row in zip(ts, ms)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args):
    checks = run_suite(args.suite)
    for chk in checks:
        print(chk.line())
    failed = sum(not chk.passed for chk in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


COMMANDS = {
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "matrix": _cmd_matrix,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"liesqueeze: error: {exc}", file=sys.stderr)
        return 2
    except (CutoffError, ConvergenceError, OSError) as exc:
        print(f"liesqueeze: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
