"""Release gate: the ten checks that must hold before shipping.

Each test prints exactly one ``criterion NN: PASS/FAIL`` line (run with
``pytest -s`` to watch them stream) and then asserts, so a red criterion
fails the suite.  The corpus-scale sweeps fan out over a process pool and
stream rows instead of accumulating them.
"""

import json
import os
import time
from pathlib import Path

from invstab import cli
from invstab.campaign import VERDICTS, CampaignSummary, iter_rows
from invstab.codecs import decode_graph6, encode_graph6
from invstab.corpus import exhaustive_up_to, random_graphs, union_pairs
from invstab.decomposition import (
    NotApplicable,
    es_union_mining_decreasing,
    es_union_mining_increasing,
    es_union_multiplicative,
    vs_union_mining_decreasing,
    vs_union_mining_increasing,
    vs_union_multiplicative_general,
    vs_union_multiplicative_nonzero_nonone,
)
from invstab.graphs import complete_graph, cycle_graph, disjoint_union, path_graph
from invstab.invariants import INVARIANTS, get_invariant, total_bound_ok
from invstab.stability import INFINITY, edge_stability, vertex_stability
from invstab.values import min_value

JOBS = min(8, os.cpu_count() or 1)
BASELINE = Path(__file__).parent / "data" / "findings_baseline.json"

K1 = complete_graph(1)
K2 = complete_graph(2)
K3 = complete_graph(3)
P3 = path_graph(3)
C3 = cycle_graph(3)
C4 = cycle_graph(4)

# the invariants the union laws and union rules are stated for
MULTIPLICATIVE = ("independent_sets", "spanning_forests", "matchings",
                  "perfect_matchings")
MINING = ("min_degree", "girth", "min_component_order")
LAW_INVARIANTS = MULTIPLICATIVE + MINING


def _verdict(num, ok, detail):
    word = "PASS" if ok else "FAIL"
    print(f"criterion {num:02d}: {word} - {detail}")
    assert ok, f"criterion {num:02d}: {detail}"


def _sweep(graphs, inv_ids, tags, on_row=None):
    """Stream a campaign, keeping only the tallies (and violated rows)."""
    summary = CampaignSummary(counts={t: {v: 0 for v in VERDICTS} for t in tags})
    for row in iter_rows(graphs, inv_ids, tags, jobs=JOBS):
        summary.tally(row)
        if on_row is not None:
            on_row(row)
    return summary


def test_criterion_01_union_value_laws():
    start = time.monotonic()
    graphs = list(exhaustive_up_to(4))
    invs = [get_invariant(inv_id) for inv_id in LAW_INVARIANTS]
    part = {(inv.id, g): inv.evaluate(g) for inv in invs for g in graphs}
    failures = []
    for a in graphs:
        for b in graphs:
            union = disjoint_union([a, b])
            for inv in invs:
                got = inv.evaluate(union)
                fa, fb = part[(inv.id, a)], part[(inv.id, b)]
                want = fa * fb if inv.multiplicative else min_value([fa, fb])
                if got != want:
                    failures.append((inv.id, encode_graph6(a), encode_graph6(b)))
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 60
    _verdict(1, ok,
             f"product/min laws on {len(graphs)}x{len(graphs)} ordered pairs, "
             f"{len(invs)} invariants, {len(failures)} failures, {elapsed:.1f}s"
             + (f", first {failures[:3]}" if failures else ""))


# rule, parts in corpus order, invariant, expected value (None = refusal)
CURATED = [
    (vs_union_multiplicative_nonzero_nonone, (K3, K3), "independent_sets", 1),
    (vs_union_multiplicative_nonzero_nonone, (C3, C4), "spanning_forests", 1),
    (vs_union_multiplicative_nonzero_nonone, (K2, K2), "perfect_matchings", None),
    (vs_union_multiplicative_general, (K1, K2), "perfect_matchings", 1),
    (vs_union_multiplicative_general, (P3, P3), "girth", None),
    (vs_union_multiplicative_general, (K1, K1), "spanning_forests", INFINITY),
    (vs_union_mining_increasing, (K1, K3), "min_component_order", 1),
    (vs_union_mining_increasing, (K2, K2), "min_component_order", 1),
    # min_degree is increasing on each of these parts, so the rule applies
    # and its value matches the search
    (vs_union_mining_increasing, (K1, K3), "min_degree", 1),
    (vs_union_mining_decreasing, (C3, C4), "girth", 1),
    (vs_union_mining_decreasing, (P3, P3), "girth", INFINITY),
    (vs_union_mining_decreasing, (C3, C3), "girth", 2),
    (es_union_multiplicative, (C3, P3), "spanning_forests", 1),
    (es_union_multiplicative, (K1, K1), "independent_sets", INFINITY),
    (es_union_multiplicative, (K1, K2), "perfect_matchings", None),
    (es_union_mining_decreasing, (C3, C4), "girth", 1),
    (es_union_mining_decreasing, (P3, C4), "girth", 1),
    (es_union_mining_decreasing, (C3, C3), "girth", 2),
    (es_union_mining_increasing, (K2, K3), "min_component_order", 1),
    (es_union_mining_increasing, (K1, K1), "min_component_order", INFINITY),
    (es_union_mining_increasing, (K2, K2), "min_component_order", 1),
]

VERTEX_SIDE = {
    vs_union_multiplicative_nonzero_nonone,
    vs_union_multiplicative_general,
    vs_union_mining_increasing,
    vs_union_mining_decreasing,
}


def test_criterion_02_curated_decompositions():
    start = time.monotonic()
    failures = []
    for rule, parts, inv_id, expected in CURATED:
        g = disjoint_union(list(parts))
        inv = get_invariant(inv_id)
        label = (rule.__name__, encode_graph6(g), inv_id)
        if expected is None:
            try:
                rule(g, inv)
            except NotApplicable:
                continue
            failures.append(label + ("expected refusal",))
            continue
        try:
            dec = rule(g, inv)
        except NotApplicable as exc:
            failures.append(label + (f"refused: {exc.reason}",))
            continue
        search = vertex_stability if rule in VERTEX_SIDE else edge_stability
        oracle = search(g, inv).value
        if not (dec.value == expected == oracle):
            failures.append(label + (f"rule {dec.value} oracle {oracle}",))
    elapsed = time.monotonic() - start
    ok = not failures
    _verdict(2, ok, f"{len(CURATED)} curated union instances, "
                    f"{len(failures)} mismatches, {elapsed:.1f}s"
                    + (f", first {failures[:2]}" if failures else ""))


def test_criterion_03_exact_union_rules():
    start = time.monotonic()
    tags = ("th4", "th11", "th12")
    summary = _sweep(union_pairs(7), LAW_INVARIANTS, tags)
    elapsed = time.monotonic() - start
    ok = (summary.violations == 0 and summary.budget_skips == 0
          and summary.rows_total == 28409 * len(LAW_INVARIANTS) * len(tags)
          and elapsed < 600)
    _verdict(3, ok, f"{summary.rows_total} rows over two-part unions of order "
                    f"<= 7, {summary.violations} violations, {elapsed:.0f}s")


def test_criterion_04_general_union_rules():
    start = time.monotonic()
    tags = ("th5", "th6", "th118", "th116")
    watch = {
        ("th5", encode_graph6(disjoint_union([K1, K2])), "perfect_matchings"),
        ("th6", encode_graph6(disjoint_union([K1, K3])), "min_component_order"),
        ("th6", encode_graph6(disjoint_union([K2, K2])), "min_component_order"),
        ("th118", encode_graph6(disjoint_union([C3, C4])), "girth"),
        ("th118", encode_graph6(disjoint_union([P3, P3])), "girth"),
        ("th118", encode_graph6(disjoint_union([C3, C3])), "girth"),
        ("th116", encode_graph6(disjoint_union([K2, K3])), "min_component_order"),
        ("th116", encode_graph6(disjoint_union([K1, K1])), "min_component_order"),
        ("th116", encode_graph6(disjoint_union([K2, K2])), "min_component_order"),
    }
    seen = {}
    bad_witness = []

    def on_row(row):
        key = (row["tag"], row["graph6"], row["invariant"])
        if key in watch:
            seen[key] = row["verdict"]
        if row["verdict"] in ("confirmed", "violated"):
            witness = row["witness"]
            if (not isinstance(witness, dict)
                    or set(witness) != {"attained", "unstable", "oracle_witness"}):
                bad_witness.append(key)

    summary = _sweep(union_pairs(7), LAW_INVARIANTS, tags, on_row)
    elapsed = time.monotonic() - start
    baseline = json.loads(BASELINE.read_text())
    ok = (summary.rows_total == 28409 * len(LAW_INVARIANTS) * len(tags)
          and summary.budget_skips == 0
          and not bad_witness
          and all(seen.get(key) == "confirmed" for key in watch)
          and summary.findings == baseline)
    _verdict(4, ok, f"{summary.rows_total} rows, {len(watch)} curated instances "
                    f"confirmed, findings match the {len(baseline)}-entry "
                    f"baseline, {elapsed:.0f}s")


def test_criterion_05_upper_bounds_exhaustive():
    start = time.monotonic()
    tags = ("lemma1", "lemma2", "lemma3", "th1", "th2", "th3",
            "th7", "th8", "th9", "th10")
    summary = _sweep(exhaustive_up_to(5), tuple(INVARIANTS), tags)
    elapsed = time.monotonic() - start
    ok = (summary.violations == 0 and summary.budget_skips == 0
          and summary.rows_total == 1099 * len(INVARIANTS) * len(tags)
          and elapsed < 1800)
    _verdict(5, ok, f"{summary.rows_total} bound checks on all graphs of "
                    f"order <= 5, {summary.violations} violations, {elapsed:.0f}s")


def test_criterion_06_edge_stability_vs_covering():
    start = time.monotonic()
    graphs = [g for g in exhaustive_up_to(5) if g.size <= 9]
    inv_ids = ("min_degree", "max_degree", "girth", "chromatic",
               "spanning_forests")
    summary = _sweep(graphs, inv_ids, ("lemma4",))
    counts = summary.counts["lemma4"]
    elapsed = time.monotonic() - start
    ok = (summary.violations == 0 and summary.budget_skips == 0
          and counts["confirmed"] > 0
          and summary.rows_total == len(graphs) * len(inv_ids))
    _verdict(6, ok, f"finite edge stability equals the covering number on "
                    f"{counts['confirmed']} instances "
                    f"({counts['not_applicable']} inapplicable), {elapsed:.0f}s")


def test_criterion_07_family_lower_bounds():
    start = time.monotonic()
    two_triangles = disjoint_union([C3, C3])
    graphs = [g for g in exhaustive_up_to(5) if g.size <= 8] + [two_triangles]
    target = (encode_graph6(two_triangles), "chromatic")
    hits = []

    def on_row(row):
        if (row["graph6"], row["invariant"]) == target:
            hits.append(row)

    summary = _sweep(graphs, ("chromatic", "max_degree", "girth"),
                     ("th13",), on_row)
    elapsed = time.monotonic() - start
    tight = (len(hits) == 1
             and hits[0]["verdict"] == "confirmed"
             and hits[0]["formula"] == {"fin": "2/1"}
             and hits[0]["oracle"] == 2)
    ok = (summary.violations == 0 and summary.budget_skips == 0
          and summary.rows_total == len(graphs) * 3 and tight)
    _verdict(7, ok, f"{summary.rows_total} family bounds sound, bound 2 is "
                    f"attained on the two-triangle chromatic instance, "
                    f"{elapsed:.0f}s")


def test_criterion_08_coloring_relations():
    start = time.monotonic()
    graphs = list(exhaustive_up_to(5))
    edged = {encode_graph6(g) for g in graphs if g.size > 0}
    tags = ("prop1", "prop2", "prop3", "prop4")
    per_graph = {}

    def on_row(row):
        per_graph.setdefault(row["graph6"], []).append(row)

    summary = _sweep(graphs, ("total_chromatic", "edge_chromatic"), tags, on_row)

    def confirmed(rows, pair, subject):
        return sum(1 for r in rows
                   if r["tag"] in pair and r["invariant"] == subject
                   and r["verdict"] == "confirmed")

    split_bad = []
    for code, rows in per_graph.items():
        want = 1 if code in edged else 0
        if (confirmed(rows, ("prop1", "prop2"), "total_chromatic") != want
                or confirmed(rows, ("prop3", "prop4"), "edge_chromatic") != want):
            split_bad.append(code)
    degree_bound = all(total_bound_ok(g) for g in graphs)
    elapsed = time.monotonic() - start
    splits = tuple(summary.counts[t]["confirmed"] for t in tags)
    ok = (summary.violations == 0 and not split_bad and degree_bound
          and splits == (1020, 74, 1016, 78))
    _verdict(8, ok, f"each of {len(edged)} edged graphs matches exactly one "
                    f"relation per coloring kind (splits {splits}), total "
                    f"coloring bound holds on all {len(graphs)}, {elapsed:.0f}s")


def test_criterion_09_codec_round_trips():
    start = time.monotonic()
    graphs = list(exhaustive_up_to(5))
    graphs.extend(random_graphs(1000, 30, seed=2718))
    failures = 0
    for g in graphs:
        code = encode_graph6(g)
        back = decode_graph6(code)
        if back != g or encode_graph6(back) != code:
            failures += 1
    elapsed = time.monotonic() - start
    ok = failures == 0
    _verdict(9, ok, f"{len(graphs)} graphs survive both codec round trips "
                    f"byte-exactly, {failures} failures, {elapsed:.1f}s")


def test_criterion_10_worker_count_determinism(tmp_path):
    start = time.monotonic()

    def run(jobs, name):
        out = tmp_path / name
        rc = cli.main([
            "verify", "--mode", "exhaustive", "--n-max", "4",
            "--invariants", "girth,independent_sets,min_degree",
            "--theorems", "lemma1,th5,th12,th13",
            "--out", str(out), "--jobs", str(jobs),
        ])
        return rc, out.read_bytes()

    rc_one, report_one = run(1, "jobs1.json")
    rc_three, report_three = run(3, "jobs3.json")
    elapsed = time.monotonic() - start
    ok = report_one == report_three and rc_one == rc_three
    _verdict(10, ok, f"verify reports with --jobs 1 and --jobs 3 are "
                     f"byte-identical ({len(report_one)} bytes, rc {rc_one}), "
                     f"{elapsed:.0f}s")
