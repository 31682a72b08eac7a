"""Command-line entry point.

Exit status: 0 on success, 1 when a verification fails, 2 on usage,
parse or lowering errors. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache

from .algebra import classical_limit, commutator, poisson_bracket
from .errors import NcpsError, line_col
from .evolution import DEFAULT_ORDER, MAX_ORDER, heisenberg_series
from .expr import parse, parse_poly
from .oracle import DEFAULT_DIM, DEFAULT_TOL, build_fock_rep, check_identity
from .render import render, to_json_obj
from .verifier import MAX_DEGREE_CAP, verify_paper


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _format_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_mutually_exclusive_group()
    group.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    group.add_argument("--text", dest="format", action="store_const", const="text", help="text output (default)")
    parent.set_defaults(format="text")
    return parent


def _read_file(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _expressions(args, count: int | None) -> list[str]:
    exprs = list(args.exprs)
    if args.file:
        exprs += _read_file(args.file)
    if count is not None and len(exprs) != count:
        raise UsageError(f"expected {count} expressions, got {len(exprs)}")
    if not exprs:
        raise UsageError("no expression given")
    return exprs


def _poly(src: str):
    try:
        return parse_poly(src)
    except NcpsError as exc:
        exc.source_text = src
        raise


def _diagnostic(exc: NcpsError) -> str:
    src = getattr(exc, "source_text", None)
    if src is None or exc.span is None:
        return f"error: {exc}"
    start, end = exc.span
    line, col = line_col(src, start)
    text_line = src.splitlines()[line - 1] if src.splitlines() else ""
    width = max(1, min(end, start + len(text_line)) - start)
    msg = str(exc)
    if not msg.startswith(f"{line}:"):
        msg = f"{line}:{col}: {msg}"
    return f"error: {msg}\n  {text_line}\n  {' ' * (col - 1)}{'^' * width}"


def _emit_poly(F, fmt: str):
    print(render(F, fmt))


def cmd_normalize(args):
    polys = [_poly(e) for e in _expressions(args, None)]
    for F in polys:
        _emit_poly(F, args.format)
    return 0


def cmd_comm(args):
    a, b = (_poly(e) for e in _expressions(args, 2))
    _emit_poly(commutator(a, b), args.format)
    return 0


def cmd_poisson(args):
    polys = [_poly(e) for e in _expressions(args, 2)]
    projected = []
    for idx, F in enumerate(polys):
        if not F.is_hbar_free():
            print(f"note: argument {idx + 1} depends on hbar; using its classical limit", file=sys.stderr)
            projected.append(classical_limit(F))
        else:
            projected.append(F)
    _emit_poly(poisson_bracket(*projected), args.format)
    return 0


def cmd_evolve(args):
    F = _poly(args.observable)
    H = _poly(args.hamiltonian)
    if not 0 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must be between 0 and {MAX_ORDER}")
    series = heisenberg_series(F, H, args.order)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "observable": to_json_obj(F),
                    "hamiltonian": to_json_obj(H),
                    "order": series.order,
                    "terms": [to_json_obj(t) for t in series.terms],
                },
                separators=(",", ":"),
            )
        )
    else:
        for term in series.terms:
            print(render(term))
    return 0


def cmd_verify(args):
    if not 1 <= args.degree <= MAX_DEGREE_CAP:
        raise UsageError(f"--degree must be between 1 and {MAX_DEGREE_CAP}")
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    report = verify_paper(args.seed, args.degree, args.cases, args.oracle)
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.passed else 1


def _parse_params(text: str | None) -> dict[str, float]:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad --params entry {item!r}; expected name=value")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad value for parameter {name.strip()!r}: {value!r}") from None
    return params


def cmd_oracle(args):
    check = args.check
    if check is None and args.file:
        lines = _read_file(args.file)
        check = lines[0] if lines else None
    if check is None or check.count("==") != 1:
        raise UsageError('--check must have the form "<lhs> == <rhs>"')
    lhs_src, rhs_src = (s.strip() for s in check.split("=="))
    sides = []
    for src in (lhs_src, rhs_src):
        try:
            node = parse(src)
            parse_poly(src)  # surfaces lowering errors with spans
        except NcpsError as exc:
            exc.source_text = src
            raise
        sides.append(node)
    try:
        rep = build_fock_rep(args.dim, _parse_params(args.params))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    outcome = check_identity(sides[0], sides[1], rep, args.tol)
    if args.format == "json":
        print(json.dumps(outcome.to_dict()))
    else:
        status = "pass" if outcome.passed else "fail"
        print(
            f"{status} max_deviation={outcome.max_deviation:.3e} "
            f"block={outcome.block} degree={outcome.degree} tol={outcome.tol:g}"
        )
    return 0 if outcome.passed else 1


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    fmt = _format_flags()
    parser = _Parser(prog="ncps", description="Exact algebra of x and p with [x, p] = i*hbar.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[fmt], help="parse and print in normal order")
    p.add_argument("exprs", nargs="*", metavar="expr")
    p.add_argument("--file", help="read expressions, one per line")
    p.set_defaults(func=cmd_normalize)

    for name, func, helptext in (
        ("comm", cmd_comm, "commutator [A, B]"),
        ("poisson", cmd_poisson, "Poisson bracket of the classical limits"),
    ):
        p = sub.add_parser(name, parents=[fmt], help=helptext)
        p.add_argument("exprs", nargs="*", metavar="expr")
        p.add_argument("--file", help="read the two expressions, one per line")
        p.set_defaults(func=func)

    p = sub.add_parser("evolve", parents=[fmt], help="Heisenberg series of an observable")
    p.add_argument("--observable", required=True)
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify-paper", parents=[fmt], help="replay every derivation step")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--degree", type=int, default=5)
    p.add_argument("--oracle", action="store_true", help="also cross-check numerically")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[fmt], help="check an identity with truncated matrices")
    p.add_argument("--dim", type=int, default=DEFAULT_DIM)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--params", help="comma-separated name=value pairs")
    p.add_argument("--check", help='"<lhs> == <rhs>"')
    p.add_argument("--file", help="read the check from the first line")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NcpsError as exc:
        print(_diagnostic(exc), file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
