"""Command line interface.

Exit status: 0 on success, 1 on a mathematical failure (singular
reduction, pole, resonance, failed inclusion), 2 on a usage or input error.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .errors import DomainError, IsoredError
from .massspring import SpringNetwork, boundary_force, frequency_response
from .reduction import isospectral_reduce, sequential_reduce
from .regions import (
    GridSpec,
    check_inclusion,
    gershgorin_raster,
    pseudoresonance_raster,
    pseudospectrum_raster,
)
from .wmatrix import format_root

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


def _indices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"bad index list {text!r}; use e.g. 1,2,4") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"bad number list {text!r}") from None


def _norm(text: str):
    if text in ("1", "2"):
        return int(text)
    if text.lower() in ("inf", "infinity"):
        return "inf"
    raise DomainError(f"unsupported norm {text!r}; use 1, 2 or inf")


def _emit_matrix(m, out, var=io.DEFAULT_VAR, name=None):
    if out:
        io.write_matrix_file(m, out, name=name, var=var)
    else:
        sys.stdout.write(io.format_matrix(m, name=name, var=var))


def _print_multiset(ms):
    for z, k in ms.items:
        sys.stdout.write(f"{format_root(z)} (×{k})\n")
    if not ms.items:
        sys.stdout.write("(empty)\n")


# --------------------------------------------------------------------------
# actions shared by matrix files and spring networks


def _do_reduce(m, args, var):
    if args.chain:
        chain = [_indices(part) for part in args.chain.split("|")]
        if args.keep and _indices(args.keep) != chain[-1]:
            raise DomainError("--keep must equal the last set of --chain")
        r = sequential_reduce(m, chain)
    elif args.keep:
        r = isospectral_reduce(m, _indices(args.keep))
    else:
        raise DomainError("reduce needs --keep or --chain")
    _emit_matrix(r, args.output, var)


def _do_spectrum(m, args):
    _print_multiset(m.inverse_spectrum() if args.inverse else m.spectrum())


def _do_raster(m, args, kind):
    spec = GridSpec.parse(args.window, args.grid)
    if kind == "gersh":
        raster = gershgorin_raster(m, spec, use_spectral_inverse=args.inverse)
    elif kind == "pseudospec":
        raster = pseudospectrum_raster(m, spec, _norm(args.norm))
    else:
        raster = pseudoresonance_raster(m, spec, _norm(args.norm))
    if args.output:
        io.write_raster(raster, args.output, "csv")
    else:
        sys.stdout.write(io.format_raster_csv(raster))
    if args.pgm:
        window = io.levels_window(_floats(args.levels)) if args.levels else None
        io.write_raster(raster, args.pgm, "pgm", window)


def _dispatch(action, m, args, var=io.DEFAULT_VAR):
    if action == "reduce":
        _do_reduce(m, args, var)
    elif action == "spectrum":
        _do_spectrum(m, args)
    elif action == "specinv":
        _emit_matrix(m.spectral_inverse(), args.output, var)
    elif action in ("gersh", "pseudospec", "pseudores"):
        _do_raster(m, args, action)
    elif action == "response":
        _emit_matrix(m, args.output, var)
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown action {action!r}")


# --------------------------------------------------------------------------
# commands


def cmd_matrix(args) -> int:
    doc = io.parse_matrix_file(args.matrix)
    _dispatch(args.command, doc.matrix, args, doc.var)
    return EXIT_OK


def cmd_spring(args) -> int:
    if args.network:
        net = io.parse_network_file(args.network)
    elif args.path:
        net = SpringNetwork.path(args.path)
    else:
        raise DomainError("spring needs --path N or --network FILE")
    boundary = _indices(args.boundary) if args.boundary else list(range(1, net.n + 1))
    if args.action == "force":
        if args.omega is None or args.u is None:
            raise DomainError("force needs --omega and --u")
        f = boundary_force(net, boundary, args.omega, _floats(args.u))
        for x in f:
            sys.stdout.write(f"{format_root(complex(x))}\n")
        return EXIT_OK
    resp = frequency_response(net, boundary)
    _dispatch(args.action, resp, args)
    return EXIT_OK


def cmd_check(args) -> int:
    inner = io.read_raster(args.inner)
    outer = io.read_raster(args.outer)
    report = check_inclusion(inner, outer, args.eps)
    sys.stdout.write(report.summary() + "\n")
    for j, i, z in report.violations[:20]:
        sys.stdout.write(f"  violation at {format_root(z)}\n")
    return EXIT_OK if report.ok else EXIT_MATH


def _add_output_flags(p, raster=True):
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.add_argument("--keep", help="1-based indices to keep, e.g. 1,2")
    p.add_argument("--chain", help='nested sets separated by "|", e.g. "1,2,3|1,2"')
    p.add_argument("--inverse", action="store_true",
                   help="inverse spectrum / region of the spectral inverse")
    if raster:
        p.add_argument("--window", default="-2,2,-2,2", help="re_min,re_max,im_min,im_max")
        p.add_argument("--grid", default="200x200", help="NXxNY points")
        p.add_argument("--norm", default="2", help="operator norm: 1, 2 or inf")
        p.add_argument("--pgm", help="also write an 8-bit PGM image")
        p.add_argument("--levels", help="eps values fixing the PGM log window, e.g. 1,0.316,0.1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isored", description="Isospectral reductions of rational-function matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "reduce": "isospectral or sequential reduction",
        "spectrum": "spectrum (or --inverse spectrum) with multiplicities",
        "specinv": "spectral inverse (M - l I)^-1 + l I",
        "gersh": "Gershgorin-type region raster",
        "pseudospec": "pseudospectrum raster (resolvent norm)",
        "pseudores": "pseudoresonance raster (norm of M(l) - l I)",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("matrix", help="matrix file")
        _add_output_flags(p)
        p.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("spring", help="line mass-spring network response")
    sp.add_argument("action", nargs="?", default="response",
                    choices=["response", "reduce", "spectrum", "specinv", "gersh",
                             "pseudospec", "pseudores", "force"])
    sp.add_argument("--path", type=int, help="unit path network with N nodes")
    sp.add_argument("--network", help="springnet file")
    sp.add_argument("--boundary", help="1-based boundary nodes (default: all)")
    sp.add_argument("--omega", type=float, help="frequency for the force action")
    sp.add_argument("--u", help="boundary displacements for the force action")
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_spring)

    cp = sub.add_parser("check-inclusion", help="verify inner raster region lies in outer")
    cp.add_argument("inner")
    cp.add_argument("outer")
    cp.add_argument("--eps", type=float, help="tolerance (ignored for Gershgorin rasters)")
    cp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, OSError) as exc:
        sys.stderr.write(f"isored: error: {exc}\n")
        return EXIT_USAGE
    except IsoredError as exc:
        sys.stderr.write(f"isored: math error: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
