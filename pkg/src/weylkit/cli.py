"""Command-line interface.

Subcommands: transform, inverse, basis-table, spectral, decay, selftest.
Exit codes: 0 success, 1 numerical failure, 2 usage error, 3 I/O error.
Output is byte-stable for fixed inputs and seeds.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import decay as decay_mod
from . import ncspace, phase_space, quadrature, selftest, spectral
from .specfun import check_eps

_SYMBOL_HELP = (
    "built-in symbol language: 'e:m,n' (Laguerre-Gauss mode), 'gauss:a' "
    "(exp(-a rho^2/2)), 'omega:lam,j[,sigma]' (cylinder harmonic damped by "
    "exp(-rho^2/(2 sigma^2)), sigma default 6); combine with '+' and scale "
    "with '<float>*', e.g. '0.5*e:2,1+gauss:1'"
)


class SymbolError(ValueError):
    pass


def _parse_atom(text, eps):
    name, _, args = text.partition(":")
    name = name.strip()
    if name == "e":
        try:
            m_str, n_str = args.split(",")
            m, n = int(m_str), int(n_str)
        except ValueError as exc:
            raise SymbolError(f"bad mode indices in {text!r}") from exc
        if m < 0 or n < 0:
            raise SymbolError(f"mode indices must be >= 0 in {text!r}")
        return phase_space.lg_mode(m, n, eps)
    if name == "gauss":
        try:
            a = float(args)
        except ValueError as exc:
            raise SymbolError(f"bad decay rate in {text!r}") from exc
        if a <= 0:
            raise SymbolError(f"decay rate must be positive in {text!r}")
        return phase_space.gaussian(a)
    if name == "omega":
        parts = args.split(",")
        if len(parts) not in (2, 3):
            raise SymbolError(f"omega takes lam,j[,sigma]: {text!r}")
        try:
            lam = float(parts[0])
            j = int(parts[1])
            sigma = float(parts[2]) if len(parts) == 3 else 6.0
        except ValueError as exc:
            raise SymbolError(f"bad omega parameters in {text!r}") from exc
        if lam < 0 or sigma <= 0:
            raise SymbolError(f"need lam >= 0 and sigma > 0 in {text!r}")
        harmonic = spectral.cylinder_harmonic(spectral.SpectralPoint(lam, j))
        damp = 1.0 / (2.0 * sigma * sigma)

        def evaluator(x, y):
            return harmonic(x, y) * np.exp(-damp * (x * x + y * y))

        return phase_space.PhaseFunction(evaluator, band_limit=abs(j))
    raise SymbolError(f"unknown symbol {text!r}")


def parse_symbol(text, eps):
    """Parse the --symbol mini-language into a PhaseFunction."""
    total = None
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise SymbolError("empty term in symbol expression")
        scale = 1.0
        if "*" in term:
            scale_str, _, term = term.partition("*")
            try:
                scale = float(scale_str)
            except ValueError as exc:
                raise SymbolError(f"bad scalar {scale_str!r}") from exc
            term = term.strip()
        atom = scale * _parse_atom(term, eps)
        total = atom if total is None else total + atom
    return total


def _positive_eps(text):
    try:
        return check_eps(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _size(text):
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("N must be >= 2")
    return value


def _nonneg_float(text):
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError("value must be >= 0")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weylkit",
        description="transforms, tables, spectral checks, and decay curves")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="write the operator image of a symbol")
    p.add_argument("--symbol", required=True, help=_SYMBOL_HELP)
    p.add_argument("--eps", type=_positive_eps, default=1.0)
    p.add_argument("-N", "--size", type=_size, default=32)
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("inverse", help="sample the inverse image of a matrix")
    p.add_argument("--matrix", required=True, help="input JSON path")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--extent", type=_nonneg_float, default=4.0,
                   help="half-width of the sampling square (default 4)")
    p.add_argument("--points", type=int, default=33,
                   help="points per axis (default 33)")

    p = sub.add_parser("basis-table",
                       help="tabulate Weyl-operator matrix elements on a grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=_positive_eps, default=1.0)
    p.add_argument("--ximax", type=_nonneg_float, default=3.0)
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("spectral", help="write eigencheck residuals vs N")
    p.add_argument("--kind", choices=("laplacian", "rotation"),
                   required=True)
    p.add_argument("--lam", type=_nonneg_float, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--eps", type=_positive_eps, default=1.0)
    p.add_argument("--sizes", default="32,64,128,256",
                   help="comma-separated truncation sizes")
    p.add_argument("--tol", type=float, default=None,
                   help="fail (exit 1) if any residual exceeds this")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("decay", help="write a weighted decay curve")
    p.add_argument("--alpha", type=_nonneg_float, required=True)
    p.add_argument("--tmax", type=_nonneg_float, default=5.0)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("-N", "--size", type=_size, default=1024,
                   help="starting truncation (guard may escalate it)")
    p.add_argument("--out", required=True, help="output CSV path")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def _cmd_transform(args):
    try:
        symbol = parse_symbol(args.symbol, args.eps)
    except SymbolError as exc:
        print(f"weylkit transform: {exc}", file=sys.stderr)
        return 2
    op = ncspace.OperatorMatrix(
        args.eps, phase_space.analyze(symbol, args.size, args.eps).c)
    _write_json(args.out, op.to_json_dict())
    largest = float(np.abs(op.mat).max())
    print(f"wrote {args.size}x{args.size} matrix to {args.out} "
          f"(max |entry| {largest:.6g})")
    return 0


def _cmd_inverse(args):
    with open(args.matrix) as fh:
        op = ncspace.OperatorMatrix.from_json_dict(json.load(fh))
    field = phase_space.CoeffField(op.eps, op.mat)
    axis = np.linspace(-args.extent, args.extent, args.points)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    values = phase_space.synthesize_at(field, xs.ravel(), ys.ravel())
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "re", "im"])
        for x, y, v in zip(xs.ravel(), ys.ravel(), values):
            writer.writerow([format(x, ".17g"), format(y, ".17g"),
                             format(v.real, ".17g"), format(v.imag, ".17g")])
    print(f"wrote {values.size} samples to {args.out} "
          f"(max |value| {np.abs(values).max():.6g})")
    return 0


def _cmd_basis_table(args):
    if args.m < 0 or args.n < 0:
        print("weylkit basis-table: --m/--n must be >= 0", file=sys.stderr)
        return 2
    if args.points < 1:
        print("weylkit basis-table: --points must be >= 1", file=sys.stderr)
        return 2
    axis = np.linspace(-args.ximax, args.ximax, args.points)
    rows = 0
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["xi_x", "xi_y", "re", "im"])
        for xx in axis:
            values = ncspace.weyl_element(
                args.m, args.n, np.full_like(axis, xx), axis, args.eps)
            for yy, v in zip(axis, np.atleast_1d(values)):
                writer.writerow([format(xx, ".17g"), format(yy, ".17g"),
                                 format(v.real, ".17g"),
                                 format(v.imag, ".17g")])
                rows += 1
    print(f"wrote {rows} rows to {args.out}")
    return 0


def _cmd_spectral(args):
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        print("weylkit spectral: --sizes must be comma-separated integers",
              file=sys.stderr)
        return 2
    if not sizes or any(s <= abs(args.j) + 2 for s in sizes):
        print("weylkit spectral: each size must exceed |j| + 2",
              file=sys.stderr)
        return 2
    point = spectral.SpectralPoint(args.lam, args.j)
    rows = spectral.residual_vs_size(args.kind, point, sizes, args.eps)
    spectral.write_residual_csv(args.out, rows)
    worst = max(res for _, res in rows)
    print(f"wrote {len(rows)} rows to {args.out} (max residual {worst:.6g})")
    if args.tol is not None and worst > args.tol:
        print(f"weylkit spectral: residual {worst:.6g} exceeds "
              f"tolerance {args.tol:.6g}", file=sys.stderr)
        return 1
    return 0


def _cmd_decay(args):
    if args.steps < 1:
        print("weylkit decay: --steps must be >= 1", file=sys.stderr)
        return 2
    times = np.linspace(0.0, args.tmax, args.steps)
    try:
        curve = decay_mod.decay_curve(args.alpha, times, size=args.size)
    except decay_mod.DecayConvergenceError as exc:
        print(f"weylkit decay: {exc}", file=sys.stderr)
        return 1
    decay_mod.write_decay_csv(args.out, curve)
    print(f"wrote {len(curve.times)} rows to {args.out} "
          f"(max rel deviation {curve.max_rel_deviation:.6g}, "
          f"truncation {curve.size})")
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "transform": _cmd_transform,
        "inverse": _cmd_inverse,
        "basis-table": _cmd_basis_table,
        "spectral": _cmd_spectral,
        "decay": _cmd_decay,
        "selftest": lambda a: selftest.run_selftest(),
    }
    handler = handlers[args.command]
    try:
        return handler(args)
    except OSError as exc:
        path = getattr(exc, "filename", None) or "<unknown path>"
        print(f"weylkit {args.command}: I/O error on {path}: "
              f"{exc.strerror or exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
