"""Command-line entry point: ``symfix <command> ...``.

Exit codes: 0 success, 1 I/O or parse error, 2 cap exceeded,
3 survey found a counterexample.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from contextlib import contextmanager
from typing import Any, Iterator, TextIO

from . import __version__
from .constructions import extend_fxd, verify_fix_fxd
from .fixing import DEFAULT_SUBSET_MAX_N, analyze
from .fixing_graph import build_fixing_graph, dump_json, fix_via_fixing_graph, t_parameter_and_fxd
from .graph import Graph, Graph6Error, encode_graph6, generate_family, parse_family_params, parse_graph6
from .permgroup import DEFAULT_AUT_CAP, CapExceeded, automorphism_group
from .survey import Limits, survey_enumerated, survey_file

EXIT_OK, EXIT_IO, EXIT_CAP, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
AUT_CAP_ENV = "SYMFIX_AUT_CAP"


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@contextmanager
def _open_out(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _read_graphs(path: str) -> list[tuple[str, Graph]]:
    if path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(path, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    out = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text:
            continue
        try:
            out.append((text, parse_graph6(text)))
        except Graph6Error as exc:
            raise Graph6Error(f"{path}:{lineno}: {exc}") from None
    if not out:
        raise Graph6Error(f"{path}: no graphs found")
    return out


def _envelope(text: str) -> dict[str, Any]:
    return {"tool_version": __version__, "input_digest": hashlib.sha256(text.encode("ascii")).hexdigest()}


def cmd_analyze(args: argparse.Namespace) -> int:
    for text, g in _read_graphs(args.input):
        report = analyze(
            g,
            beta=args.beta,
            polynomial=args.polynomial,
            aut_cap=args.aut_cap,
            subset_max_n=args.subset_cap,
        )
        print(_dumps({**_envelope(text), **report.to_json()}))
    return EXIT_OK


def cmd_fixing_graph(args: argparse.Namespace) -> int:
    (text, g), *_ = _read_graphs(args.input)
    group = automorphism_group(g)
    D = build_fixing_graph(g, group)
    if args.dot:
        with _open_out(args.dot) as fh:
            fh.write(D.to_dot())
    if args.json:
        with _open_out(args.json) as fh:
            fh.write(dump_json(D))
    summary: dict[str, Any] = {**_envelope(text), "r": D.r, "s": D.s, "edges": D.num_edges}
    summary["fix"] = fix_via_fixing_graph(D)[0]
    summary["t"], summary["fxd"] = t_parameter_and_fxd(D) if not group.is_trivial() else (None, 0)
    if "-" not in (args.dot, args.json):
        print(_dumps(summary))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    g = generate_family(args.family, **parse_family_params(args.params))
    with _open_out(args.out) as fh:
        fh.write(encode_graph6(g) + "\n")
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    if args.construction in ("fix-fxd", "thm5"):
        record = verify_fix_fxd(args.p, args.q, aut_cap=args.aut_cap)
        print(record["graph6"])
        print(_dumps(record))
        return EXIT_OK
    (_, g), *_ = _read_graphs(args.input)
    result = extend_fxd(g, aut_cap=args.aut_cap)
    print(encode_graph6(result.graph))
    print(_dumps(result.to_json()))
    return EXIT_OK


def cmd_survey(args: argparse.Namespace) -> int:
    limits = Limits(aut_cap=args.aut_cap, subset_max_n=args.subset_cap)
    if args.input:
        report = survey_file(args.input, limits=limits, workers=args.workers)
    else:
        report = survey_enumerated(
            args.max_n,
            connected_only=not args.allow_disconnected,
            allow_large=args.allow_large,
            limits=limits,
            workers=args.workers,
        )
    with _open_out(args.report) as fh:
        fh.write(report.to_csv())
    summary = json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    if args.summary:
        with _open_out(args.summary) as fh:
            fh.write(summary)
    elif args.report != "-":
        sys.stdout.write(summary)
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_globals(p: argparse.ArgumentParser, defaults: bool) -> None:
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    env_cap = os.environ.get(AUT_CAP_ENV)
    p.add_argument(
        "--aut-cap", type=_positive_int,
        help=f"group enumeration cap (default 10^7, env {AUT_CAP_ENV})",
        **(kw or {"default": int(env_cap) if env_cap else DEFAULT_AUT_CAP}),
    )
    p.add_argument(
        "--subset-cap", type=_positive_int,
        help=f"largest n for 2^n subset sweeps (default {DEFAULT_SUBSET_MAX_N})",
        **(kw or {"default": DEFAULT_SUBSET_MAX_N}),
    )
    p.add_argument(
        "--seed-none", action="store_true",
        help="reserved; every algorithm is deterministic",
        **(kw or {"default": False}),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symfix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, defaults=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="fixing invariants of each input graph as JSON lines")
    _add_globals(p, defaults=False)
    p.add_argument("--input", default="-", help="graph6 file, one graph per line ('-' = stdin)")
    p.add_argument("--format", choices=["graph6"], default="graph6")
    p.add_argument("--beta", action="store_true", help="also compute the metric dimension")
    p.add_argument("--polynomial", action="store_true", help="also compute the fixing polynomial")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fixing-graph", help="build the bipartite fixing graph")
    _add_globals(p, defaults=False)
    p.add_argument("--input", default="-")
    p.add_argument("--format", choices=["graph6"], default="graph6")
    p.add_argument("--dot", help="write Graphviz DOT here")
    p.add_argument("--json", help="write adjacency JSON here")
    p.set_defaults(func=cmd_fixing_graph)

    p = sub.add_parser("generate", help="emit a named graph as graph6")
    _add_globals(p, defaults=False)
    p.add_argument("--family", required=True)
    p.add_argument("--params", default="", help="comma-separated k=v, e.g. m=5,k=2")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("construct", help="explicit constructions with verification")
    _add_globals(p, defaults=False)
    csub = p.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("fix-fxd", aliases=["thm5"], help="graph with fix = p and fxd = q")
    _add_globals(c, defaults=False)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c = csub.add_parser("extend", help="add a vertex to raise fxd by one")
    _add_globals(c, defaults=False)
    c.add_argument("--input", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("survey", help="verify every check over a graph catalog")
    _add_globals(p, defaults=False)
    p.add_argument("--max-n", type=_positive_int, default=6)
    p.add_argument("--input", help="graph6 catalog file instead of internal enumeration")
    p.add_argument("--report", required=True, help="CSV output ('-' = stdout)")
    p.add_argument("--summary", help="JSON summary output (default: stdout)")
    p.add_argument("--allow-disconnected", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="permit internal enumeration at n = 7")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"symfix: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError) as exc:
        print(f"symfix: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
