"""Command-line interface.

Every command prints one JSON object per line on stdout.  Exit codes:
0 on success (for ``verify``: the matrix is fooling), 1 on a domain or input
error, 2 when ``verify`` finds the matrix is not a fooling-set matrix.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import matrix_io
from .char_p_family import CharPParams, SequencePlan, build_circulant, minimal_period, paper_period
from .char_zero_family import build_M
from .exact_algebra import FieldSpec, SizeCapError, is_prime, rank
from .fooling_core import bound_report, build_inner_product_matrix, is_fooling_matrix, is_strict_fooling, tensor_power
from .submatrix_search import max_fooling_submatrix, verify_certificate

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_NOT_FOOLING = 2


class CliError(Exception):
    pass


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _write_or_print(m, out: str | None, fmt: str | None) -> None:
    if out:
        matrix_io.write_matrix(m, out, fmt)
        _emit({"written": out, "field": m.field.tag, "n_rows": m.n_rows, "n_cols": m.n_cols})
    else:
        sys.stdout.write(matrix_io.dumps(m, fmt or "json"))


def _param(args, name: str, positional_index: int) -> int:
    value = getattr(args, name)
    if value is None and len(args.params) > positional_index:
        value = args.params[positional_index]
    if value is None:
        raise CliError(f"missing parameter --{name}")
    return int(value)


def cmd_construct(args) -> int:
    if args.family == "charp":
        p = _param(args, "p", 0)
        t = _param(args, "t", 1)
        if not is_prime(p):
            raise CliError(f"{p} is not prime")
        m = build_circulant(CharPParams(p, t))
    else:
        m = build_M(_param(args, "r", 0)).matrix
    _write_or_print(m, args.out, args.format)
    return EXIT_OK


def _load(path: str):
    try:
        return matrix_io.read_matrix(path)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def cmd_verify(args) -> int:
    m = _load(args.input)
    if not m.is_square:
        raise CliError(f"matrix is {m.n_rows}x{m.n_cols}, not square")
    fooling = is_fooling_matrix(m)
    report = {"field": m.field.tag, "fooling": fooling, "strict": is_strict_fooling(m), "n": m.n_rows}
    if fooling:
        b = bound_report(m)
        report.update(rank=b.rank, rank_squared=b.rank_squared, ratio=str(b.ratio),
                      bound_holds=b.bound_holds)
    else:
        report.update(rank=rank(m), rank_squared=None, ratio=None, bound_holds=None)
    _emit(report)
    return EXIT_OK if fooling else EXIT_NOT_FOOLING


def cmd_rank(args) -> int:
    m = _load(args.input)
    if args.field:
        m = m.over(FieldSpec.parse(args.field))
    _emit({"field": m.field.tag, "n_rows": m.n_rows, "n_cols": m.n_cols, "rank": rank(m)})
    return EXIT_OK


def cmd_search(args) -> int:
    m = _load(args.input)
    cert = max_fooling_submatrix(m, mode=args.mode, budget=args.budget, workers=args.workers)
    if not verify_certificate(m, cert):
        raise AssertionError("search produced an invalid certificate")
    if args.out:
        Path(args.out).write_text(json.dumps(cert.as_dict()) + "\n")
    _emit({"mode": args.mode, "size": cert.size, "optimal": cert.optimal,
           "cells": [list(c) for c in cert.cells]})
    return EXIT_OK


def cmd_period(args) -> int:
    if args.p is None or args.r is None:
        raise CliError("period needs --p and --r")
    plan = SequencePlan.canonical(args.p, args.r)
    period = minimal_period(plan, args.bound)
    report = {"p": args.p, "r": args.r, "bound": args.bound, "minimal_period": period}
    target = paper_period(args.p, args.r)
    if target is not None:
        report["reference_period"] = target
        report["divides_paper_period"] = period is not None and target % period == 0
    _emit(report)
    return EXIT_OK


def cmd_tensor(args) -> int:
    m = _load(args.input)
    _write_or_print(tensor_power(m, args.power), args.out, args.format)
    return EXIT_OK


def cmd_ip(args) -> int:
    _write_or_print(build_inner_product_matrix(args.m), args.out, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foolrank", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def out_flags(sp):
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=["json", "csv"], default=None,
                        help="default: from the --out suffix, else json")

    sp = sub.add_parser("construct", help="build a family matrix")
    sp.add_argument("family", choices=["charp", "char0"])
    sp.add_argument("params", nargs="*", help="p t for charp, r for char0")
    sp.add_argument("--p", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--r", type=int)
    out_flags(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="fooling check and rank bound report")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("rank", help="exact rank")
    sp.add_argument("input")
    sp.add_argument("--field", help="reinterpret entries in this field, e.g. gf:2")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("search", help="largest fooling-set submatrix")
    sp.add_argument("input")
    sp.add_argument("--mode", choices=["exact", "greedy"], default="exact")
    sp.add_argument("--budget", type=int, default=None, help="search node limit")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="certificate JSON path")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("period", help="minimal period of the GF(p) sequence")
    sp.add_argument("--p", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--bound", type=int, default=100000)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("tensor", help="Kronecker power of a matrix file")
    sp.add_argument("input")
    sp.add_argument("--power", "-k", type=int, required=True)
    out_flags(sp)
    sp.set_defaults(func=cmd_tensor)

    sp = sub.add_parser("ip", help="inner-product matrix over GF(2)")
    sp.add_argument("--m", type=int, required=True)
    out_flags(sp)
    sp.set_defaults(func=cmd_ip)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, SizeCapError, ValueError, ZeroDivisionError) as e:
        sys.stderr.write(f"foolrank: error: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
