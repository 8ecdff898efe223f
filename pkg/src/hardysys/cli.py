"""Command-line interface: classify, verify, shoot, sweep, export.

Exit codes: 0 success, 1 failed verification check, 2 invalid parameters,
3 no usable (non-degenerate) root, 4 shooting bracket not found,
5 unwritable output path.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coupling import classify, find_positive_roots
from .emdenfowler import ShootConfig, exact_trajectory, shoot_synchronized
from .errors import BracketError, ParameterError
from .params import ProblemParams
from .verify import RadialGrid, full_verification

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_DEGENERATE_ONLY = 3
EXIT_NO_BRACKET = 4
EXIT_UNWRITABLE = 5


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, required=True, help="space dimension (>= 3)")
    sub.add_argument("--gamma", type=float, default=None,
                     help="common Hardy coefficient (sets gamma1 = gamma2)")
    sub.add_argument("--gamma1", type=float, default=None)
    sub.add_argument("--gamma2", type=float, default=None)
    sub.add_argument("--nu", type=float, default=0.0, help="coupling strength (>= 0)")
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--beta", type=float, default=None,
                     help="defaults to 2* - alpha; explicit values must keep the sum at 2*")
    sub.add_argument("--mu0", type=float, default=1.0, help="profile scale")


def _build_params(args) -> ProblemParams:
    if args.gamma is not None and (args.gamma1 is not None or args.gamma2 is not None):
        raise ParameterError("give either --gamma or the --gamma1/--gamma2 pair")
    if args.gamma is not None:
        g1 = g2 = args.gamma
    else:
        g1 = args.gamma1 if args.gamma1 is not None else 0.0
        g2 = args.gamma2 if args.gamma2 is not None else g1
    if args.beta is None:
        return ProblemParams.symmetric(args.n, g1, args.nu, args.alpha) \
            if g1 == g2 else ProblemParams(args.n, g1, g2, args.nu, args.alpha,
                                           2.0 * args.n / (args.n - 2) - args.alpha)
    return ProblemParams(n=args.n, gamma1=g1, gamma2=g2, nu=args.nu,
                         alpha=args.alpha, beta=args.beta)


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_classify(args) -> int:
    p = _build_params(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        roots = find_positive_roots(p)
        families = classify(p, args.mu0)
    degenerate = [r for r in roots if r.is_degenerate]
    if degenerate:
        print("warning: %d degenerate root(s) excluded: %s"
              % (len(degenerate),
                 ", ".join("%.12g" % r.c_tilde for r in degenerate)),
              file=sys.stderr)
    if not families:
        print("no usable root of the coupling function", file=sys.stderr)
        return EXIT_DEGENERATE_ONLY
    rows = [{"c_tilde": f.c_tilde, "c1": f.c1, "c2": f.c2,
             "f_prime": f.root.f_prime} for f in families]
    fh, close = _open_out(args.out)
    try:
        if args.format == "json":
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(["c_tilde", "c1", "c2", "f_prime"])
            for row in rows:
                writer.writerow(["%.17g" % row[k]
                                 for k in ("c_tilde", "c1", "c2", "f_prime")])
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _build_params(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = full_verification(p, args.mu0, integration_tol=args.tol,
                                   amplitude_factor=args.perturb_amplitude)
    if report.n_families == 0:
        print("no usable root of the coupling function; nothing to verify",
              file=sys.stderr)
        return EXIT_DEGENERATE_ONLY
    fh, close = _open_out(args.out)
    try:
        if args.format == "json":
            json.dump(report.to_json_dict(), fh, indent=2)
            fh.write("\n")
        elif args.format == "csv":
            writer = csv.writer(fh)
            writer.writerow(["name", "value", "threshold", "passed"])
            for c in report.checks:
                writer.writerow([c.name, "%.17g" % c.value, "%.17g" % c.threshold,
                                 "true" if c.passed else "false"])
            writer.writerow(["overall", "", "", "true" if report.overall else "false"])
        else:
            fh.write(report.to_text())
    finally:
        if close:
            fh.close()
    return EXIT_OK if report.overall else EXIT_CHECK_FAILED


def cmd_shoot(args) -> int:
    p = _build_params(args)
    families = classify(p, args.mu0)
    if not families:
        print("no usable root of the coupling function", file=sys.stderr)
        return EXIT_DEGENERATE_ONLY
    if not 0 <= args.root_index < len(families):
        raise ParameterError(
            f"root index {args.root_index} out of range (found {len(families)} families)")
    fam = families[args.root_index]
    config = ShootConfig(bracket=tuple(args.bracket) if args.bracket else None,
                         tol=args.tol)
    recovered = shoot_synchronized(p, fam.root, config)
    d = p.derived()
    target = fam.c1 * d.amplitude * 2.0 ** (-d.delta)
    rel = abs(recovered - target) / target
    print(f"recovered_amplitude: {recovered:.17g}")
    print(f"closed_form_target: {target:.17g}")
    print(f"relative_error: {rel:.17g}")
    return EXIT_OK


def _sweep_value(item):
    base, name, value = item
    kwargs = {"n": base.n, "gamma1": base.gamma1, "gamma2": base.gamma2,
              "nu": base.nu, "alpha": base.alpha, "beta": base.beta}
    kwargs[name] = value
    if name == "alpha":
        kwargs["beta"] = 2.0 * base.n / (base.n - 2) - value
    p = ProblemParams(**kwargs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        roots = [r for r in find_positive_roots(p) if not r.is_degenerate]
    return value, roots


def cmd_sweep(args) -> int:
    base = _build_params(args)
    if args.samples < 2:
        raise ParameterError("a sweep needs at least two samples")
    values = np.linspace(args.start, args.stop, args.samples)
    # validate the endpoints up front so bad ranges fail before any work
    for v in (values[0], values[-1]):
        _sweep_value((base, args.param, float(v)))
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(_sweep_value,
                                [(base, args.param, float(v)) for v in values]))
    fh, close = _open_out(args.out)
    try:
        writer = csv.writer(fh)
        writer.writerow(["index", args.param, "root_count", "roots"])
        for i, (value, roots) in enumerate(results):
            writer.writerow([i, "%.17g" % value, len(roots),
                             ";".join("%.17g" % r.c_tilde for r in roots)])
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_export(args) -> int:
    p = _build_params(args)
    families = classify(p, args.mu0)
    if not families:
        print("no usable root of the coupling function", file=sys.stderr)
        return EXIT_DEGENERATE_ONLY
    if not 0 <= args.root_index < len(families):
        raise ParameterError(
            f"root index {args.root_index} out of range (found {len(families)} families)")
    fam = families[args.root_index]
    d = p.derived()

    targets = []
    if args.what in ("profile", "both"):
        path = args.out if args.what == "profile" else args.out + ".profile.csv"
        targets.append(("profile", path))
    if args.what in ("trajectory", "both"):
        path = args.out if args.what == "trajectory" else args.out + ".trajectory.csv"
        targets.append(("trajectory", path))

    for kind, path in targets:
        try:
            fh = open(path, "w", newline="")
        except OSError as exc:
            print(f"cannot write {path}: {exc}", file=sys.stderr)
            return EXIT_UNWRITABLE
        with fh:
            if kind == "profile":
                grid = RadialGrid.log_uniform(args.grid_lo, args.grid_hi, args.grid_n)
                r = grid.points
                u = fam.u(r)
                v = fam.v(r)
                fh.write("r,u,v,r_tau1_u,r_tau2_u\n")
                wt1 = np.power(r, d.tau1) * u
                wt2 = np.power(r, d.tau2) * u
                for vals in zip(r, u, v, wt1, wt2):
                    fh.write(",".join("%.17g" % x for x in vals) + "\n")
            else:
                t0 = math.log(args.mu0)
                half = np.linspace(0.0, args.t_halfspan, args.t_points // 2 + 1)
                t_grid = np.concatenate([(t0 - half)[::-1][:-1], t0 + half])
                exact_trajectory(fam, t_grid).write_csv(fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardysys",
        description="classify, verify, and export synchronized solutions of the "
                    "doubly critical inverse-square system",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="list roots of the coupling function "
                        "with their constants")
    _add_param_flags(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run the full verification battery")
    _add_param_flags(sp)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--out", default=None)
    sp.add_argument("--tol", type=float, default=1e-10,
                    help="integration tolerance used inside the checks")
    sp.add_argument("--perturb-amplitude", type=float, default=1.0,
                    help=argparse.SUPPRESS)  # sensitivity hook for testing
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("shoot", help="recover the homoclinic amplitude by shooting")
    _add_param_flags(sp)
    sp.add_argument("--root-index", type=int, default=0)
    sp.add_argument("--bracket", type=float, nargs=2, default=None,
                    metavar=("LO", "HI"))
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_shoot)

    sp = sub.add_parser("sweep", help="root counts over a parameter range")
    _add_param_flags(sp)
    sp.add_argument("--param", choices=("nu", "alpha"), required=True)
    sp.add_argument("--start", type=float, required=True)
    sp.add_argument("--stop", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("export", help="write profile and/or trajectory CSV files")
    _add_param_flags(sp)
    sp.add_argument("--what", choices=("profile", "trajectory", "both"),
                    default="both")
    sp.add_argument("--out", required=True, help="output path (or prefix for --what both)")
    sp.add_argument("--root-index", type=int, default=0)
    sp.add_argument("--grid-lo", type=float, default=1e-6)
    sp.add_argument("--grid-hi", type=float, default=1e6)
    sp.add_argument("--grid-n", type=int, default=2048)
    sp.add_argument("--t-halfspan", type=float, default=10.0)
    sp.add_argument("--t-points", type=int, default=2000)
    sp.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except BracketError as exc:
        print(f"bracket not found: {exc}", file=sys.stderr)
        return EXIT_NO_BRACKET
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE


if __name__ == "__main__":
    raise SystemExit(main())
