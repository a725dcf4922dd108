"""Command line front end.

Subcommands:

    compute     one stability number for one graph
    beta-prime  spanning covering number for one graph
    bounds      bound checks for one graph, tags picked by --theorems
    decompose   one disjoint-union formula for one graph
    verify      corpus-wide campaign, JSON report to --out
    corpus      write a corpus as graph6 lines
    report      render a verify report to CSV tables and PNG figures

Exit codes: 0 success, 1 usage or input error, 2 search budget exceeded,
3 verify found violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus as corpora
from .campaign import DECOMP_RULES, TAGS, evaluate_pair, write_report
from .codecs import Graph6Error, decode_graph6, encode_graph6, parse_edge_list
from .invariants import INVARIANTS, DomainError, get_invariant
from .stability import (
    BudgetError,
    SearchPolicy,
    covering_number,
    edge_stability,
    threshold_edge_stability,
    threshold_vertex_stability,
    vertex_stability,
)
from .values import ExtRational

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_FINDINGS = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(path: str, fmt: str):
    text = Path(path).read_text(encoding="ascii")
    if fmt == "graph6":
        for line in text.splitlines():
            if line.strip():
                return decode_graph6(line.strip())
        raise ValueError(f"no graph6 line found in {path}")
    return parse_edge_list(text)


def _parse_universe(text: str) -> int:
    if text.startswith("2^"):
        return 1 << int(text[2:])
    return int(text)


def _parse_invariants(text: str) -> list[str]:
    if text == "all":
        return list(INVARIANTS)
    ids = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [i for i in ids if i not in INVARIANTS]
    if unknown:
        raise ValueError(
            f"unknown invariants {unknown}; known: {', '.join(INVARIANTS)}"
        )
    if not ids:
        raise ValueError("empty invariant list")
    return ids


def _parse_theorems(text: str) -> list[str]:
    if text == "all":
        return list(TAGS)
    tags = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [t for t in tags if t not in TAGS]
    if unknown:
        raise ValueError(f"unknown theorem tags {unknown}; known: {', '.join(TAGS)}")
    if not tags:
        raise ValueError("empty theorem list")
    return tags


def _witness_text(witness, side: str) -> str:
    if witness is None:
        return "none"
    if side == "vertex":
        return " ".join(str(v) for v in witness)
    return " ".join(f"{u}-{v}" for u, v in witness)


def _witness_list(witness, side: str):
    if witness is None:
        return None
    if side == "vertex":
        return [int(v) for v in witness]
    return [[int(u), int(v)] for u, v in witness]


# ----------------------------------------------------------- subcommands


def _cmd_compute(args) -> int:
    g = _read_graph(args.input, args.format)
    inv = get_invariant(args.invariant)
    policy = SearchPolicy(vertex_range=args.policy)
    if args.threshold is not None:
        theta = ExtRational(Fraction(args.threshold))
        search = (
            threshold_vertex_stability if args.side == "vertex"
            else threshold_edge_stability
        )
        res = search(g, inv, theta, policy)
        label = f"{'vs' if args.side == 'vertex' else 'es'}[f < {theta}]"
    else:
        search = vertex_stability if args.side == "vertex" else edge_stability
        res = search(g, inv, policy)
        label = "vs" if args.side == "vertex" else "es"
    if args.json:
        payload = {
            "graph6": encode_graph6(g),
            "invariant": inv.id,
            "side": args.side,
            "threshold": args.threshold,
            "policy": args.policy,
            "value": res.value_json(),
        }
        if args.witness:
            payload["witness"] = _witness_list(res.witness, args.side)
        print(json.dumps(payload))
    else:
        print(f"{label}({inv.id}) = {res.value_json()}")
        if args.witness:
            print(f"witness: {_witness_text(res.witness, args.side)}")
    return EXIT_OK


def _cmd_beta_prime(args) -> int:
    g = _read_graph(args.input, args.format)
    inv = get_invariant(args.invariant)
    print(covering_number(g, inv))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    g = _read_graph(args.input, args.format)
    tags = _parse_theorems(args.theorems)
    policy = SearchPolicy()
    for tag in tags:
        row = evaluate_pair(tag, g, args.invariant, policy)
        if row["verdict"] in ("not_applicable", "budget_skipped"):
            print(f"{tag}: {row['verdict']}")
        else:
            formula = json.dumps(row["formula"])
            oracle = json.dumps(row["oracle"])
            print(f"{tag}: {row['verdict']} (formula {formula}, observed {oracle})")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    from .bounds import NotApplicable

    g = _read_graph(args.input, args.format)
    inv = get_invariant(args.invariant)
    rule, side = DECOMP_RULES[args.theorem]
    try:
        dec = rule(g, inv, SearchPolicy())
    except NotApplicable as exc:
        print(f"not applicable: {exc}")
        return EXIT_OK
    print(f"side: {side}")
    print(f"case: {dec.case}")
    print(f"value: {dec.value_json()}")
    print(f"attained: {' '.join(map(str, dec.attained)) or '-'}")
    print(f"unstable: {' '.join(map(str, dec.unstable)) or '-'}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    inv_ids = _parse_invariants(args.invariants)
    tags = _parse_theorems(args.theorems)
    policy = SearchPolicy(max_universe=_parse_universe(args.max_universe))
    graphs = corpora.build(args.mode, args.n_max, count=args.count, seed=args.seed)
    meta = {
        "mode": args.mode,
        "n_max": args.n_max,
        "count": args.count if args.mode == "random" else None,
        "seed": args.seed if args.mode == "random" else None,
        "invariants": inv_ids,
        "theorems": tags,
        "policy": policy.to_json(),
    }
    summary = write_report(
        args.out, meta, graphs, inv_ids, tags, policy,
        jobs=args.jobs, timings=args.timings,
    )
    width = max(len(t) for t in tags)
    for tag in tags:
        c = summary.counts[tag]
        print(
            f"{tag:<{width}}  confirmed {c['confirmed']:>7}  "
            f"violated {c['violated']:>5}  not_applicable {c['not_applicable']:>7}  "
            f"budget_skipped {c['budget_skipped']:>5}"
        )
    print(
        f"rows {summary.rows_total}, violations {summary.violations}, "
        f"budget skips {summary.budget_skips}, report {args.out}"
    )
    return EXIT_FINDINGS if summary.violations else EXIT_OK


def _cmd_corpus(args) -> int:
    graphs = corpora.build(args.mode, args.n_max, count=args.count, seed=args.seed)
    with open(args.out, "w", encoding="ascii") as fh:
        total = 0
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
            total += 1
    print(f"{total} graphs written to {args.out}")
    return EXIT_OK


def _cmd_report(args) -> int:
    from .reporting import render_report

    for path in render_report(args.input, args.out_dir):
        print(path)
    return EXIT_OK


# -------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="invstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="graph file")
        p.add_argument(
            "--format", choices=("graph6", "edgelist"), default="graph6"
        )

    p = sub.add_parser("compute", help="one stability number for one graph")
    add_input(p)
    p.add_argument("--invariant", required=True, choices=list(INVARIANTS))
    p.add_argument("--side", required=True, choices=("vertex", "edge"))
    p.add_argument("--threshold", help="rational theta: search for f < theta")
    p.add_argument("--policy", choices=("proper", "all"), default="proper")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("beta-prime", help="spanning covering number")
    add_input(p)
    p.add_argument("--invariant", required=True, choices=list(INVARIANTS))
    p.set_defaults(func=_cmd_beta_prime)

    p = sub.add_parser("bounds", help="bound checks for one graph")
    add_input(p)
    p.add_argument("--invariant", required=True, choices=list(INVARIANTS))
    p.add_argument("--theorems", required=True, help="comma list or 'all'")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("decompose", help="disjoint-union formula for one graph")
    add_input(p)
    p.add_argument("--invariant", required=True, choices=list(INVARIANTS))
    p.add_argument("--theorem", required=True, choices=sorted(DECOMP_RULES))
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="corpus-wide campaign")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--mode", required=True, choices=("exhaustive", "random", "union")
    )
    p.add_argument("--count", type=int, default=50, help="random mode only")
    p.add_argument("--seed", type=int, default=0, help="random mode only")
    p.add_argument("--invariants", required=True, help="comma list or 'all'")
    p.add_argument("--theorems", required=True, help="comma list or 'all'")
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--max-universe", default="2^20", help="subset budget, e.g. 2^20"
    )
    p.add_argument(
        "--timings", action="store_true",
        help="record wall time in the report (breaks byte-identity)",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("corpus", help="write a corpus as graph6 lines")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--mode", required=True, choices=("exhaustive", "random", "union")
    )
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("report", help="render a verify report")
    p.add_argument("--input", required=True, help="JSON report from verify")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Graph6Error as exc:
        print(f"invstab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"invstab: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"invstab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"invstab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
