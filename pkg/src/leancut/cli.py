"""Command-line interface.

Exit codes: 0 ok, 2 invalid decomposition, 3 undecided at the enumeration
bound, 4 iteration guard hit, 64 unparsable input or bad usage, 70 internal
invariant failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import oracle
from .errors import (
    InvariantError,
    IterationLimitError,
    ParseError,
    PreconditionError,
    UndecidedError,
)
from .improve import leanify, leanify_3ec
from .leanness import DEFAULT_MAX_ADH_ENUM, find_minimal_certificate, is_lean
from .multigraph import is_connected, is_k_edge_connected, parse_graph
from .tcd import fatness, from_json, to_json, trivial_decomposition, validate, width

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDECIDED = 3
EXIT_ITERATIONS = 4
EXIT_PARSE = 64
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        return raw.decode("utf-8"), hashlib.sha256(raw).hexdigest()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}") from None


def _load(graph_path, decomp_path=None):
    text, graph_hash = _read(graph_path)
    try:
        g = parse_graph(text)
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"{graph_path}: {exc}") from None
    if decomp_path is None:
        return g, None, graph_hash, None
    text, decomp_hash = _read(decomp_path)
    try:
        d = from_json(text)
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"{decomp_path}: {exc}") from None
    return g, d, graph_hash, decomp_hash


def _require_valid(g, d):
    problem = validate(g, d, one_based=True)
    if problem:
        raise _Exit(EXIT_INVALID, problem)


def cmd_validate(args):
    g, d, _, _ = _load(args.graph, args.decomposition)
    _require_valid(g, d)
    return EXIT_OK


def cmd_width(args):
    g, d, _, _ = _load(args.graph, args.decomposition)
    _require_valid(g, d)
    print(f"width={width(g, d)}")
    print("fatness=" + ",".join(str(x) for x in fatness(g, d)))
    return EXIT_OK


def cmd_certificate(args):
    g, d, _, _ = _load(args.graph, args.decomposition)
    _require_valid(g, d)
    cert = find_minimal_certificate(g, d, args.max_adh_enum)
    print("lean" if cert is None else cert.to_json())
    return EXIT_OK


def _starting_point(g, d):
    if d is not None:
        return d, "given"
    if g.n <= oracle.OracleConfig().max_vertices:
        _, witness = oracle.brute_force_tcw(g)
        return witness, "oracle witness"
    return trivial_decomposition(g), "trivial"


def cmd_leanify(args):
    started = time.monotonic()
    g, d, graph_hash, decomp_hash = _load(args.graph, args.decomposition)
    if d is not None:
        _require_valid(g, d)
    if not is_connected(g):
        raise _Exit(EXIT_PARSE, "leanify needs a connected graph")
    start, origin = _starting_point(g, d)
    trace, events = [], []
    try:
        if is_k_edge_connected(g, 3):
            # run the improvement loop even when a single bag would do
            events.append(f"3-edge-connected input on {g.n} vertices: improvement loop")
            result = leanify_3ec(g, start, args.max_iters, args.max_adh_enum, trace)
        else:
            result = leanify(g, start, args.max_iters, args.max_adh_enum, trace, events)
        lean = is_lean(g, result, args.max_adh_enum)
    except IterationLimitError as exc:
        raise _Exit(EXIT_ITERATIONS, str(exc)) from None
    if not lean:
        raise InvariantError("leanify returned a decomposition that is not lean")
    oracle_ok = None
    if args.oracle_check:
        oracle_ok = oracle.naive_is_lean(g, result)
        if not oracle_ok:
            raise InvariantError("naive oracle disagrees: output is not lean")

    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("iteration\tk\tdistance\tcut\twidth\tfirst_diff\n")
            for rec in trace:
                fh.write(rec.to_tsv() + "\n")
    out = to_json(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)

    report = {
        "command": "leanify",
        "inputs": {"graph": graph_hash, "decomposition": decomp_hash},
        "flags": {"max_iters": args.max_iters, "max_adh_enum": args.max_adh_enum},
        "start": origin,
        "width_before": width(g, start),
        "width_after": width(g, result),
        "lean": lean,
        "oracle_check": oracle_ok,
        "iterations": len(trace),
        "events": events,
        "fatness_trace": [list(rec.fatness_after) for rec in trace],
        "output": hashlib.sha256(out.encode("utf-8")).hexdigest(),
    }
    if args.timing:
        report["wall_seconds"] = round(time.monotonic() - started, 3)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="leancut", description="Lean tree-cut decompositions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a decomposition against a graph")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("width", help="print width and fatness")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("certificate", help="print a minimal non-leanness certificate")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.add_argument("--max-adh-enum", type=int, default=DEFAULT_MAX_ADH_ENUM)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("leanify", help="turn a decomposition into a lean one")
    p.add_argument("graph")
    p.add_argument("decomposition", nargs="?")
    p.add_argument("-o", "--output", help="decomposition output file (default stdout)")
    p.add_argument("--report", help="run report file (default stderr)")
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--max-adh-enum", type=int, default=DEFAULT_MAX_ADH_ENUM)
    p.add_argument("--trace", help="write the per-step trace as TSV")
    p.add_argument("--oracle-check", action="store_true", help="re-check leanness naively")
    p.add_argument("--timing", action="store_true", help="add wall time to the report")
    p.set_defaults(func=cmd_leanify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if str(exc):
            print(str(exc), file=sys.stderr)
        return exc.code
    except UndecidedError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNDECIDED
    except PreconditionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
