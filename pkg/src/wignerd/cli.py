"""Command-line interface: ``wignerd <subcommand> [options]``.

Quantum numbers are passed doubled (``--two-j 3`` is j = 3/2).  Angles are
radians (``--theta``) or rational multiples of pi (``--theta-pi 1/6``).
Exit status: 0 ok, 2 bad arguments or quantum numbers, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .engine import (
    boundary_classify,
    d_derivative,
    d_derivative_matrix,
    d_derivative_recurrence,
    d_element,
    eigenbasis,
    fourier_slice,
)
from .errors import NumericalFailure, ParityError
from .harness import (
    DEFAULT_BUDGET,
    ErrorRecord,
    boundary_map,
    default_theta_grid,
    derivative_error_sweep,
    error_sweep,
    fisher_information,
    fit_quadratic,
    outcome_probabilities,
)
from .io import format_bigreal, read_csv, to_csv, to_json
from .oracle import (
    DEFAULT_PRECISION,
    PiMultiple,
    oracle_d_derivative,
    oracle_d_sum,
    oracle_edge_row,
    oracle_fourier_reconstruction,
    oracle_legendre,
)
from .spin import HalfInt


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _angle(args, exact: bool = False):
    if args.theta is not None and args.theta_pi is not None:
        raise UsageError("give either --theta or --theta-pi, not both")
    if args.theta_pi is not None:
        angle = PiMultiple.parse(args.theta_pi)
        return angle if exact else angle.radians()
    if args.theta is None:
        raise UsageError("an angle is required (--theta or --theta-pi)")
    return args.theta


def _grid(args) -> list:
    if args.theta is not None and args.theta_pi is not None:
        raise UsageError("give either --theta or --theta-pi, not both")
    if args.theta is not None:
        return [args.theta]
    if args.theta_pi is not None:
        return [PiMultiple.parse(t) for t in args.theta_pi.split(",")]
    grid = default_theta_grid()
    if args.include_zero:
        grid = [PiMultiple(0)] + grid
    return grid


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _qn(args):
    _need(args, "two_j", "two_m", "two_n")
    return HalfInt(args.two_j), HalfInt(args.two_m), HalfInt(args.two_n)


def cmd_element(args):
    j, m, n = _qn(args)
    theta = _angle(args)
    value = d_element(eigenbasis(j), m, n, theta)
    return [{"two_j": j.twice, "two_m": m.twice, "two_n": n.twice, "theta": theta, "value": value}]


def cmd_table(args):
    _need(args, "two_j")
    j = HalfInt(args.two_j)
    theta = _angle(args)
    table = d_derivative_matrix(eigenbasis(j), theta, args.order).values
    rows = []
    for im in range(j.twice + 1):
        for in_ in range(j.twice + 1):
            rows.append({"two_m": 2 * im - j.twice, "two_n": 2 * in_ - j.twice,
                         "order": args.order, "value": float(table[im, in_])})
    return rows


def cmd_derivative(args):
    j, m, n = _qn(args)
    theta = _angle(args)
    basis = eigenbasis(j)
    row = {"two_j": j.twice, "two_m": m.twice, "two_n": n.twice, "theta": theta,
           "order": args.order, "value": d_derivative(basis, m, n, theta, args.order)}
    if args.order == 1:
        row["recurrence"] = d_derivative_recurrence(basis, m, n, theta)
    return [row]


def cmd_fourier(args):
    j, m, n = _qn(args)
    sl = fourier_slice(eigenbasis(j), m, n)
    coeffs = sl.coefficients()
    return [{"two_mu": -j.twice + 2 * k, "p": float(sl.p[k]), "quarter_phase": sl.quarter_phase,
             "re_t": float(coeffs[k].real), "im_t": float(coeffs[k].imag)}
            for k in range(j.twice + 1)]


def cmd_boundary(args):
    _need(args, "two_j")
    return boundary_map(HalfInt(args.two_j), _angle(args))


def _sweep_common(args):
    _need(args, "two_j")
    return [HalfInt(t) for t in args.two_j], _grid(args)


def cmd_error_sweep(args):
    js, grid = _sweep_common(args)
    recs = error_sweep(js, grid, args.budget, args.precision_bits, args.seed)
    return [r.as_row() for r in recs]


def cmd_derivative_sweep(args):
    js, grid = _sweep_common(args)
    recs = derivative_error_sweep(js, grid, args.order, args.budget, args.precision_bits, args.seed)
    return [r.as_row() for r in recs]


def _records_from_csv(path: str) -> list[ErrorRecord]:
    with open(path) as fh:
        rows = read_csv(fh.read())
    recs = []
    for r in rows:
        two_j = int(r["two_j"])
        arg = (HalfInt(int(r["two_m_abs"])), HalfInt(int(r["two_n_abs"])))
        recs.append(ErrorRecord(HalfInt(two_j), float(r["theta"]), float(r["max_abs_error"]), arg,
                                float(r["max_rel_error_inside"]),
                                (HalfInt(int(r["two_m_rel"])), HalfInt(int(r["two_n_rel"]))),
                                int(r["samples"]), int(r["order"]), int(r["theta_index"])))
    return recs


def cmd_fit(args):
    if args.records:
        recs = _records_from_csv(args.records)
    else:
        js, grid = _sweep_common(args)
        recs = error_sweep(js, grid, args.budget, args.precision_bits, args.seed)
    fit = fit_quadratic(recs)
    return [{"a": fit.a, "b": fit.b, "rms_residual": fit.rms_residual, "spins": len(fit.j)}]


def cmd_fisher(args):
    _need(args, "two_j")
    j = HalfInt(args.two_j)
    theta = _angle(args)
    basis = eigenbasis(j)
    return [{"two_j": j.twice, "theta": theta, "fisher": fisher_information(basis, theta),
             "prob_sum": float(outcome_probabilities(basis, theta).sum())}]


def cmd_oracle(args):
    j, m, n = _qn(args)
    theta = _angle(args, exact=True)
    prec = args.precision_bits
    method = args.method
    if method == "sum":
        if args.order:
            value = oracle_d_derivative(j, m, n, theta, args.order, prec)
        else:
            value = oracle_d_sum(j, m, n, theta, prec)
    elif args.order:
        raise UsageError("derivatives are only available with --method sum")
    elif method == "edge":
        if m.twice != j.twice:
            raise UsageError("--method edge needs m = j (the top row); pass the column as --two-n")
        value = oracle_edge_row(j, n, theta, prec)
    elif method == "legendre":
        if n.twice != 0:
            raise UsageError("--method legendre needs n = 0")
        value = oracle_legendre(j, m, theta, prec)
    else:
        value = oracle_fourier_reconstruction(j, m, n, theta, prec)
    theta_f = float(theta)
    return [{"two_j": j.twice, "two_m": m.twice, "two_n": n.twice, "theta": theta_f,
             "order": args.order, "method": method, "precision_bits": prec,
             "region": boundary_classify(j, m, n, theta_f).value,
             "value": float(value), "value_hp": format_bigreal(value)}]


COMMANDS = {
    "element": (cmd_element, "one d-matrix element"),
    "table": (cmd_table, "full (2j+1)^2 table (or its --order derivative)"),
    "derivative": (cmd_derivative, "k-th theta-derivative of one element"),
    "fourier": (cmd_fourier, "Fourier coefficients of one element"),
    "boundary": (cmd_boundary, "central-region map with |d| per cell"),
    "error-sweep": (cmd_error_sweep, "engine vs. oracle maximum errors per (j, theta)"),
    "derivative-sweep": (cmd_derivative_sweep, "same for the --order derivative"),
    "fit": (cmd_fit, "fit 1e14*max error to a*j^2 + b"),
    "fisher": (cmd_fisher, "Fisher information of the rotated |j,-j> state"),
    "oracle": (cmd_oracle, "high-precision reference value"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--two-m", type=int)
    common.add_argument("--two-n", type=int)
    common.add_argument("--theta", type=float, help="angle in radians")
    common.add_argument("--theta-pi", help="angle as a multiple of pi, e.g. 1/6 (comma list for sweeps)")
    common.add_argument("--order", type=int, default=0)
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="wignerd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wignerd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("error-sweep", "derivative-sweep", "fit"):
            p.add_argument("--two-j", type=_int_list, help="comma-separated doubled spins")
            p.add_argument("--include-zero", action="store_true", help="add theta = 0 to the default grid")
        else:
            p.add_argument("--two-j", type=int)
        if name == "fit":
            p.add_argument("--records", help="CSV written by error-sweep")
        if name == "oracle":
            p.add_argument("--method", choices=("sum", "edge", "legendre", "fourier"), default="sum")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "derivative-sweep" and args.order == 0:
        args.order = 1
    try:
        if args.order < 0:
            raise UsageError("--order must be non-negative")
        rows = args.func(args)
    except (UsageError, ParityError, ValueError, TypeError) as exc:
        print(f"wignerd {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"wignerd {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3

    meta = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    meta["tool"] = "wignerd"
    meta["version"] = __version__
    text = to_csv(rows) if args.format == "csv" else to_json(meta, rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
