"""Command-line entry point.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or parse
error, 3 the maximal-minor cap was exceeded.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .derivations import derivation_space, negative_window
from .groebner import MonomialOrder, quotient_basis
from .jacobian import (
    VARIANTS,
    MinorLimitError,
    build_jacobian,
    default_minor_cap,
    matrix_report,
    maximal_minors,
)
from .poly import ParseError, WeightSystem, parse_polynomial
from .verify import (
    ALL_CHECKS,
    CatalogError,
    SingularityInstance,
    render_table,
    run_catalog,
    verify_instance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _weights(text: str) -> WeightSystem:
    try:
        return WeightSystem(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight vector {text!r}: {exc}") from exc


def _orders(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from exc
    if any(n < 1 for n in out):
        raise argparse.ArgumentTypeError("orders must be >= 1")
    return out


def _degree_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from exc
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty degree window {text!r}")
    return lo_i, hi_i


def _add_common(p: argparse.ArgumentParser, instance: bool = True, order: bool = True) -> None:
    if instance:
        p.add_argument("--poly", required=True, help="polynomial, e.g. 'x^3 + y^3'")
        p.add_argument("--weights", type=_weights, help="w1,w2,... (default all 1)")
    if order:
        p.add_argument("-n", dest="n", type=_orders, default=(2,), help="order n (comma list for verify)")
        p.add_argument("--variant", choices=VARIANTS, default="zero")
    p.add_argument("--max-minors", type=int, default=None,
                   help=f"cap on column subsets (default {default_minor_cap()}, env NASHJET_MAX_MINORS)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated_at field")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nashjet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nashjet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("jacobian", help="order-n Jacobian matrix and its maximal minors"))
    _add_common(sub.add_parser("ideal", help="normalised generators of the minor ideal"))
    p = sub.add_parser("basis", help="Groebner basis and graded quotient of <f, J_n(f)>")
    _add_common(p)
    p = sub.add_parser("derivations", help="graded derivation dimensions of the quotient")
    _add_common(p)
    p.add_argument("--degrees", type=_degree_range, default=None,
                   help="degree window a..b (default: negative window -max(w)..-1)")
    p.add_argument("--dims-only", action="store_true", help="omit the explicit basis derivations")
    p = sub.add_parser("verify", help="run the verification battery on one polynomial")
    _add_common(p)
    p.add_argument("--all", action="store_true", help="run every check")
    p.add_argument("--check", action="append", choices=[name for name, _ in ALL_CHECKS], default=None)
    p.add_argument("--name", default="cli")

    cat = sub.add_parser("catalog", help="batch verification over a catalog file")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    p = cat_sub.add_parser("run", help="verify every catalog entry")
    p.add_argument("path", nargs="?", default=None, help="catalog JSON (default: bundled catalog)")
    p.add_argument("--orders", type=_orders, default=None, help="override every entry's n_range")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_common(p, instance=False, order=False)
    return parser


def _fix_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-1..2" as an option; glue it to its flag
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--degrees" and i + 1 < len(argv):
            out.append(f"--degrees={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def _instance(args) -> tuple:
    w = args.weights
    f = parse_polynomial(args.poly, len(w) if w is not None else None)
    if w is None:
        w = args.weights = WeightSystem.standard(f.nvars)
    return f, w


def _single_order(args) -> int:
    if len(args.n) != 1:
        raise UsageError(f"{args.command} takes a single order, got {','.join(map(str, args.n))}")
    return args.n[0]


def _config(args) -> dict:
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k in ("out",):
            v = None if v is None else str(v)
        elif isinstance(v, WeightSystem):
            v = list(v)
        elif isinstance(v, tuple):
            v = list(v)
        cfg[k] = v
    if cfg.get("max_minors") is None:
        cfg["max_minors"] = default_minor_cap()
    return cfg


def _envelope(args, result: dict) -> dict:
    out = {"tool": "nashjet", "version": __version__, "command": args.command, "config": _config(args)}
    if not args.no_timestamp:
        out["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    out["result"] = result
    return out


def _emit(args, payload: dict, table: str) -> None:
    text = json.dumps(payload, indent=2) + "\n" if args.format == "json" else table + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def cmd_jacobian(args) -> int:
    f, w = _instance(args)
    J = build_jacobian(f, _single_order(args), args.variant)
    ideal = maximal_minors(J, w, args.max_minors)
    rep = matrix_report(J, ideal, w)
    width = max(len(e[2]) for e in rep["entries"]) if rep["entries"] else 1
    grid = [["0"] * len(J.cols) for _ in J.rows]
    for i, j, text in rep["entries"]:
        grid[i][j] = text
    lines = [f"Jac_{J.n} ({len(J.rows)} x {len(J.cols)}, variant {J.variant})"]
    lines += ["  ".join(c.rjust(width) for c in row) for row in grid]
    _emit(args, _envelope(args, rep), "\n".join(lines))
    return EXIT_OK


def cmd_ideal(args) -> int:
    f, w = _instance(args)
    J = build_jacobian(f, _single_order(args), args.variant)
    ideal = maximal_minors(J, w, args.max_minors)
    rep = {
        "n": J.n,
        "variant": J.variant,
        "subset_count": J.num_subsets(),
        "nonzero_minor_count": len(ideal.raw),
        "generators": [
            {"polynomial": g.to_str(w), "degree": d, "sources": [list(c) for c in src]}
            for g, d, src in zip(ideal.generators, ideal.degrees, ideal.sources)
        ],
    }
    lines = [f"{len(ideal)} generators ({len(ideal.raw)} nonzero minors of {J.num_subsets()})"]
    lines += [f"  [{d}] {g.to_str(w)}" for g, d in zip(ideal.generators, ideal.degrees)]
    _emit(args, _envelope(args, rep), "\n".join(lines))
    return EXIT_OK


def _quotient(args):
    f, w = _instance(args)
    n = _single_order(args)
    ideal = maximal_minors(build_jacobian(f, n, args.variant), w, args.max_minors)
    return f, w, n, quotient_basis([f] + ideal.generators, MonomialOrder(w))


def cmd_basis(args) -> int:
    f, w, n, Q = _quotient(args)
    rep = Q.report()
    rep["generators"] = len(Q.generators)
    rep["socle_degree"] = Q.socle_degree
    lines = [f"dim = {Q.total_dim}" if Q.zero_dimensional else "infinite-dimensional quotient"]
    lines.append(f"reduced basis: {len(Q.basis)} elements")
    if Q.degree_strata:
        lines += [f"  degree {d}: {c}" for d, c in Q.degree_strata.items()]
    _emit(args, _envelope(args, rep), "\n".join(lines))
    return EXIT_OK


def cmd_derivations(args) -> int:
    f, w, n, Q = _quotient(args)
    if not Q.zero_dimensional:
        raise UsageError("the quotient is infinite-dimensional; derivation spaces are not finite")
    if args.degrees is None:
        window = negative_window(w)
        lo, hi = window.start, window.stop - 1
    else:
        lo, hi = args.degrees
    socle = Q.socle_degree or 0
    reports = []
    for e in range(lo, hi + 1):
        if e < -max(w) or e > socle:
            reports.append({"degree": e, "dimension": 0, "basis": [], "note": "outside [-max w, socle]"})
            continue
        rep = derivation_space(Q, w, e).report(w)
        if args.dims_only:
            del rep["basis"]
        reports.append(rep)
    result = {"n": n, "quotient_dim": Q.total_dim, "socle_degree": socle, "degrees": reports}
    lines = ["degree  dim"] + [f"{r['degree']:>6}  {r['dimension']}" for r in reports]
    _emit(args, _envelope(args, result), "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.all and not args.check:
        raise UsageError("pass --all or at least one --check")
    f, w = _instance(args)
    inst = SingularityInstance(args.name, f, w, args.n)
    rep = verify_instance(inst, args.n, None if args.all else args.check, args.max_minors)
    _emit(args, _envelope(args, rep.to_dict()), render_table([rep]))
    return EXIT_FAIL if rep.failed else EXIT_OK


def cmd_catalog(args) -> int:
    rep = run_catalog(args.path, args.orders, None, args.max_minors, args.jobs)
    _emit(args, _envelope(args, rep.to_dict()), rep.table())
    return rep.exit_code


COMMANDS = {
    "jacobian": cmd_jacobian,
    "ideal": cmd_ideal,
    "basis": cmd_basis,
    "derivations": cmd_derivations,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = _fix_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"nashjet: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, CatalogError) as exc:
        print(f"nashjet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MinorLimitError as exc:
        print(f"nashjet: {exc} (subset count {exc.count}); raise --max-minors to proceed", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
