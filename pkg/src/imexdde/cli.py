"""Command-line front end.

Subcommands: solve, converge, stability, fov, stepbound, list-problems.
Exit codes: 0 success, 1 usage or domain error, 2 numerical blow-up.  All
file outputs are CSV with '#'-prefixed metadata lines; relative output paths
honor the IMEXDDE_OUTPUT_DIR environment variable.
"""

from __future__ import annotations

import argparse
import inspect
import sys

import numpy as np

from . import __version__
from .benchmarks import PROBLEM_BUILDERS, make_problem
from .csvio import format_value, resolve_output_path, write_csv
from .exceptions import ImexDdeError
from .fov import (
    RULE_FOV,
    commutes,
    fov,
    fp_matrix,
    normalize_rule,
    step_bound_fov,
    step_bound_simdiag,
)
from .methods import method_from_tag
from .problems import stability_matrices
from .regions import boundary_min_distance, disk_radius, stability_boundary, z_for_radius
from .solver import convergence_study, integrate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BLOWUP = 2

_PROBLEM_PARAM_FLAGS = ("l", "n", "epsilon", "a1", "a2", "tau", "forcing_amp")


def _add_problem_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--problem", required=True, choices=sorted(PROBLEM_BUILDERS))
    parser.add_argument("--l", type=float, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--a1", type=float, default=None)
    parser.add_argument("--a2", type=float, default=None)
    parser.add_argument("--tau", type=float, default=None)
    parser.add_argument("--forcing-amp", dest="forcing_amp", type=float, default=None)


def _build_problem(args: argparse.Namespace):
    params = {name: getattr(args, name) for name in _PROBLEM_PARAM_FLAGS
              if getattr(args, name, None) is not None}
    return make_problem(args.problem, **params)


def _problem_metadata(args: argparse.Namespace) -> dict:
    meta = {"version": __version__, "problem": args.problem}
    params = {name: getattr(args, name) for name in _PROBLEM_PARAM_FLAGS
              if getattr(args, name, None) is not None}
    if params:
        meta["params"] = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    return meta


def _write_or_skip(args, header, rows, metadata) -> None:
    if getattr(args, "output", None):
        path = resolve_output_path(args.output)
        write_csv(path, header, rows, metadata)
        print(f"wrote {path}")


def _cmd_solve(args) -> int:
    problem = _build_problem(args)
    method = method_from_tag(args.method)
    traj = integrate(problem, method, args.h, args.t_end)
    meta = _problem_metadata(args)
    meta.update({"command": "solve", "method": method.label, "h": args.h,
                 "t_end": args.t_end})
    header = ["t"] + [f"y_{i}" for i in range(problem.dim)]
    rows = ([t] + list(y) for t, y in traj)
    _write_or_skip(args, header, rows, meta)
    if traj.blew_up:
        print(f"blow-up: state norm exceeded 1e12 at t = {format_value(traj.blowup_time)}")
        return EXIT_BLOWUP
    print(f"integrated {args.problem} with {method.label} to t = "
          f"{format_value(traj.final_time)} ({len(traj)} points)")
    if problem.exact is not None:
        err = np.abs(traj.final_state - problem.exact(traj.final_time))
        print("final componentwise error: "
              + " ".join(format_value(e) for e in err))
    return EXIT_OK


def _cmd_converge(args) -> int:
    problem = _build_problem(args)
    method = method_from_tag(args.method)
    h_list = [float(tok) for tok in args.h_list.split(",") if tok.strip()]
    if any(h2 >= h1 for h1, h2 in zip(h_list, h_list[1:])):
        raise ValueError("--h-list must be strictly decreasing")
    study = convergence_study(problem, method, h_list, args.t_end,
                              rate_pair=(args.rate_h1, args.rate_h2),
                              norm=args.norm)
    meta = _problem_metadata(args)
    meta.update({"command": "converge", "method": method.label,
                 "t_end": args.t_end, "norm": args.norm,
                 "rate_pair": f"{args.rate_h1},{args.rate_h2}"})
    if study.rate is not None:
        meta["conv_rate"] = format_value(study.rate)
    header = ["h", "blowup_time"] + [f"err_{i}" for i in range(problem.dim)]
    rows = []
    for row in study.rows:
        if row.errors is None:
            rows.append([row.h, row.blowup_time] + [""] * problem.dim)
        else:
            rows.append([row.h, ""] + list(row.errors))
    _write_or_skip(args, header, rows, meta)
    for row in study.rows:
        if row.errors is None:
            print(f"h={format_value(row.h)}: blow-up at t={format_value(row.blowup_time)}")
        else:
            print(f"h={format_value(row.h)}: "
                  + " ".join(format_value(e) for e in row.errors))
    if study.rate is None:
        print("convergence rate: unavailable (rate pair missing or unstable)")
        return EXIT_USAGE
    print(f"convergence rate ({args.norm} norm of errors at t_end, "
          f"h={args.rate_h1} vs h={args.rate_h2}): {format_value(study.rate)}")
    return EXIT_OK


def _cmd_stability(args) -> int:
    method = method_from_tag(args.method)
    meta = {"version": __version__, "command": "stability", "method": method.label}
    if args.curve:
        if args.z is None:
            raise ValueError("--curve requires --z")
        curve = stability_boundary(method, args.z, m=args.m, n_samples=args.n_samples)
        meta.update({"z": args.z, "m": args.m})
        rows = ([th, mu.real, mu.imag] for th, mu in zip(curve.thetas, curve.mu))
        _write_or_skip(args, ["theta", "re_mu", "im_mu"], rows, meta)
        print(f"sampled {len(curve)} boundary points; min distance to origin "
              f"{format_value(curve.min_distance())}")
        return EXIT_OK
    if args.psi:
        if args.z is None:
            raise ValueError("--psi requires --z")
        value = disk_radius(method, args.z)
        meta["z"] = args.z
        _write_or_skip(args, ["z", "disk_radius"], [[args.z, value]], meta)
        print(format_value(value))
        return EXIT_OK
    if args.chi:
        if args.r is None:
            raise ValueError("--chi requires --r")
        value = z_for_radius(method, args.r)
        meta["r"] = args.r
        _write_or_skip(args, ["r", "z"], [[args.r, value]], meta)
        print(format_value(value))
        return EXIT_OK
    if args.sweep:
        zs = -np.geomspace(-args.z_min, -args.z_max, args.n_samples)
        values = [boundary_min_distance(method, z) if args.numeric
                  else disk_radius(method, z) for z in zs]
        meta.update({"z_min": args.z_min, "z_max": args.z_max,
                     "mode": "numeric" if args.numeric else "closed_form"})
        _write_or_skip(args, ["z", "sigma_z"], zip(zs, values), meta)
        print(f"swept {len(zs)} z values")
        return EXIT_OK
    raise ValueError("choose one of --curve, --psi, --chi, --sweep")


def _cmd_fov(args) -> int:
    problem = _build_problem(args)
    a, b = stability_matrices(problem)
    estimate = fov(fp_matrix(a, b, args.p), n_angles=args.n_angles)
    meta = _problem_metadata(args)
    meta.update({"command": "fov", "p": args.p, "n_angles": args.n_angles,
                 "numerical_radius": format_value(estimate.numerical_radius)})
    thetas = 2.0 * np.pi * np.arange(args.n_angles) / args.n_angles
    rows = ([th, pt.real, pt.imag] for th, pt in zip(thetas, estimate.boundary))
    _write_or_skip(args, ["theta", "re", "im"], rows, meta)
    print(f"numerical radius: {format_value(estimate.numerical_radius)}")
    return EXIT_OK


def _cmd_stepbound(args) -> int:
    problem = _build_problem(args)
    method = method_from_tag(args.method)
    a, b = stability_matrices(problem)
    rule = args.rule
    if rule == "auto":
        rule = "per_eigenvalue" if commutes(a, b) else RULE_FOV
    else:
        rule = normalize_rule(rule)
    if rule == RULE_FOV:
        report = step_bound_fov(a, b, method, p=args.p, n_angles=args.n_angles)
    else:
        report = step_bound_simdiag(a, b, method, rule=rule)
    meta = _problem_metadata(args)
    meta["command"] = "stepbound"
    row = [report.method, report.rule, report.regime,
           report.r_used, report.lambda_d,
           "" if report.h_star is None else report.h_star]
    _write_or_skip(args, ["method", "rule", "regime", "r", "lambda_d", "h_star"],
                   [row], meta)
    if report.h_star is None:
        print(f"{report.method} [{report.rule}]: {report.regime} "
              f"(r={format_value(report.r_used)})")
    else:
        print(f"{report.method} [{report.rule}]: {report.regime}, "
              f"h* = {format_value(report.h_star)} (r={format_value(report.r_used)}, "
              f"lambda_d={format_value(report.lambda_d)})")
    return EXIT_OK


def _cmd_list_problems(_args) -> int:
    for name in sorted(PROBLEM_BUILDERS):
        builder = PROBLEM_BUILDERS[name]
        params = []
        for pname, par in inspect.signature(builder).parameters.items():
            params.append(f"{pname}={par.default}")
        print(f"{name}({', '.join(params)})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imexdde",
        description="Integrate constant-delay systems with IMEX-BDF methods "
                    "and analyze their step-size stability limits.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="integrate a problem and dump the trajectory")
    _add_problem_args(p)
    p.add_argument("--method", required=True, choices=["bdf2", "bdf3"])
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--t-end", dest="t_end", type=float, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("converge", help="error table over step sizes plus a rate")
    _add_problem_args(p)
    p.add_argument("--method", required=True, choices=["bdf2", "bdf3"])
    p.add_argument("--h-list", dest="h_list",
                   default="0.5,0.25,0.1,0.05,0.025,0.01,0.005")
    p.add_argument("--t-end", dest="t_end", type=float, default=500.0)
    p.add_argument("--rate-h1", dest="rate_h1", type=float, default=0.05)
    p.add_argument("--rate-h2", dest="rate_h2", type=float, default=0.005)
    p.add_argument("--norm", choices=["l2", "max"], default="l2")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("stability", help="boundary curves, disk radii, inverse map")
    p.add_argument("--method", required=True, choices=["bdf2", "bdf3"])
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--curve", action="store_true")
    group.add_argument("--psi", action="store_true",
                       help="disk radius at a given --z")
    group.add_argument("--chi", action="store_true",
                       help="most negative z for a given --r")
    group.add_argument("--sweep", action="store_true")
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n-samples", dest="n_samples", type=int, default=512)
    p.add_argument("--z-min", dest="z_min", type=float, default=-100.0)
    p.add_argument("--z-max", dest="z_max", type=float, default=-0.01)
    p.add_argument("--numeric", action="store_true",
                   help="sweep with the dense-search oracle instead of closed forms")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("fov", help="field-of-values boundary of a problem's coupling")
    _add_problem_args(p)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--n-angles", dest="n_angles", type=int, default=512)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_fov)

    p = sub.add_parser("stepbound", help="step-size stability report for a problem")
    _add_problem_args(p)
    p.add_argument("--method", required=True, choices=["bdf2", "bdf3"])
    p.add_argument("--rule", default="auto",
                   help="auto | per_eigenvalue | max_eigenvalue | fov "
                        "(legacy tags prop41/thm43/thm51 accepted)")
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--n-angles", dest="n_angles", type=int, default=512)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_stepbound)

    p = sub.add_parser("list-problems", help="show registered problems and parameters")
    p.set_defaults(func=_cmd_list_problems)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; keep 2 reserved for blow-up
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ImexDdeError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
