"""Command-line front end: ``xatlas <group|graph|spectrum|topology|verify>``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    return range(lo, hi + 1)


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_group(args: argparse.Namespace) -> int:
    from .toeplitz import default_convention
    from .topology import generator_orders, mu_k
    from .verify import default_cache_dir, load_group

    conv = default_convention()
    table = load_group(args.k, default_cache_dir())
    if args.save:
        table.save(args.save)
    orders = generator_orders(args.k)
    mu = mu_k(args.k)
    payload = {
        "k": args.k,
        "order": table.order,
        "generator_orders": {"x0": orders[0], "x1": orders[1], "x3": orders[2]},
        "mu": f"{mu.numerator}/{mu.denominator}",
        "convention": conv.name,
    }
    text = (
        f"G_{args.k}: order {table.order}\n"
        f"orders x0={orders[0]} x1={orders[1]} x3={orders[2]}; mu = {payload['mu']}\n"
        f"convention {conv.name}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    from .graph import bipartition, is_isomorphic
    from .verify import build_family, import_graph, write_edge_list

    if args.read:
        g = import_graph(args.read)
    else:
        if args.family is None or args.param is None:
            raise UsageError("graph needs --family and --param, or --read")
        g = build_family(args.family, args.param)
        if args.out:
            write_edge_list(g, args.out)
    deg = g.degrees()
    payload = {
        "n": g.n,
        "m": g.m,
        "simple": g.is_simple(),
        "degree": [int(deg.min()), int(deg.max())] if g.n else [0, 0],
        "bipartite": bipartition(g) is not None,
    }
    if args.compare:
        other = import_graph(args.compare)
        phi = is_isomorphic(g, other)
        payload["isomorphic"] = phi is not None
        if phi is not None:
            payload["bijection"] = [phi[v] for v in range(g.n)]
    text = "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "bijection")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    from .spectral import extreme_eigs, full_spectrum, ramanujan_check
    from .verify import build_family, import_graph

    g = import_graph(args.read) if args.read else build_family(args.family, args.param)
    deg = g.degrees()
    d = int(deg.max())
    if args.lanczos:
        value = extreme_eigs(g, tol=args.tol)
        payload = {"n": g.n, "largest_nontrivial": value}
        text = f"largest nontrivial eigenvalue: {value:.15f}"
    else:
        s = full_spectrum(g, allow_multi=True)
        payload = s.to_json()
        if deg.min() == deg.max():
            r = ramanujan_check(s, d)
            payload["ramanujan"] = {"is_ramanujan": r.is_ramanujan, "bound": r.bound, "margin": r.margin}
        text = "\n".join(f"{c.symbol:>14}  x{c.mult}" for c in s.clusters)
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_topology(args: argparse.Namespace) -> int:
    from .topology import trend, write_trend_csv

    rows = trend(args.family, args.range)
    if args.csv:
        write_trend_csv(rows, args.csv)
    payload = {"rows": [r.row() for r in rows]}
    text = "\n".join(",".join(str(v) for v in r.row().values()) for r in rows)
    _emit(args, payload, "family,param,V,E,F,genus,ratio\n" + text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_suite

    report = run_suite(
        args.suite, kmax=args.kmax, pmax=args.pmax, tol=args.tol, extended=args.extended, nmax=args.nmax
    )
    if args.markdown:
        Path(args.markdown).write_text(report.to_markdown(args.timing))
    if args.json:
        sys.stdout.write(report.to_json(args.timing))
    else:
        for r in report.results:
            sys.stdout.write(f"{r.status.upper():4} {r.name}\n")
        c = report.counts
        sys.stdout.write(f"pass {c['pass']}, fail {c['fail']}, skip {c['skip']}\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    from .verify import FAMILIES

    parser = argparse.ArgumentParser(prog="xatlas", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("group", parents=[common], help="enumerate G_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--save", help="write the XGRP1 table to this path")
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("graph", parents=[common], help="build, export or import a graph")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--param", type=int)
    p.add_argument("--out", help="edge-list path (sidecar JSON is written alongside)")
    p.add_argument("--read", help="read an edge-list file instead of building")
    p.add_argument("--compare", help="edge-list file to test for isomorphism")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("spectrum", parents=[common], help="adjacency spectrum")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--param", type=int)
    p.add_argument("--read")
    p.add_argument("--lanczos", action="store_true", help="largest nontrivial eigenvalue only")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", help="write spectrum JSON here")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("topology", parents=[common], help="genus and non-flatness trend")
    p.add_argument("--family", choices=("tk", "platonic"), required=True)
    p.add_argument("--range", type=_range, required=True, help="A..B inclusive")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_topology)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=("main", "platonic", "crosslink", "all"), default="all")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--pmax", type=int, default=13)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--extended", action="store_true", help="include k = 5 Lanczos checks")
    p.add_argument("--markdown", help="write a markdown report here")
    p.add_argument("--timing", action="store_true", help="include runtimes (breaks byte identity)")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command in ("spectrum",) and not args.read and (args.family is None or args.param is None):
        parser.print_usage(sys.stderr)
        sys.stderr.write("xatlas: error: spectrum needs --family and --param, or --read\n")
        return EXIT_USAGE
    from .toeplitz import UncalibratedConvention

    try:
        return args.fn(args)
    except (UsageError, ValueError, FileNotFoundError, UncalibratedConvention) as exc:
        sys.stderr.write(f"xatlas: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        logging.getLogger(__name__).debug("internal error", exc_info=True)
        sys.stderr.write(f"xatlas: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
