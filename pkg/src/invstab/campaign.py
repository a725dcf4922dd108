"""Verification campaigns: run every rule and bound against the brute-force
engine over a corpus and emit one report row per (graph, invariant, tag).

Row order is corpus order, then invariant order, then tag order, regardless
of worker count, so reports are byte-identical across --jobs settings. Gates
run before oracles: a row whose hypotheses fail is settled without any
subset search. Verdicts:

    confirmed       hypotheses hold and the claim checks out
    violated        hypotheses hold but the engine disagrees (a finding)
    not_applicable  hypotheses fail, or no parameter choice qualifies
    budget_skipped  a subset search would exceed the universe cap

Violated rows keep the parameters needed to replay the discrepancy.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field

from .bounds import (
    NotApplicable,
    edge_subsets,
    families,
    family_pool,
    induced_subsets,
    lb_es_family,
    relation_edge_class1,
    relation_edge_class2,
    relation_total_type1,
    relation_total_type2,
    spanning_monotone,
    spanning_removed_sets,
    ub_es_edge_pair,
    ub_es_spanning,
    ub_es_subgraph_mining,
    ub_es_subgraph_multiplicative,
    ub_es_vertex_incident,
    ub_es_via_deletion,
    ub_vs_induced_multiplicative,
    ub_vs_min_degree,
    ub_vs_mining_split,
    ub_vs_via_deletion,
    vertex_subsets,
)
from .codecs import encode_graph6
from .decomposition import (
    es_union_mining_decreasing,
    es_union_mining_increasing,
    es_union_multiplicative,
    vs_union_mining_decreasing,
    vs_union_mining_increasing,
    vs_union_multiplicative_general,
    vs_union_multiplicative_nonzero_nonone,
)
from .graphs import Graph
from .invariants import DomainError, get_invariant
from .stability import (
    BudgetError,
    DEFAULT_POLICY,
    INFINITY,
    SearchPolicy,
    covering_number,
    edge_stability,
    vertex_stability,
)
from .values import ExtRational

TAGS = (
    "lemma1", "lemma2", "lemma3",
    "th1", "th2", "th3", "th4", "th5", "th6", "th118",
    "th7", "th8", "th9", "th10", "th11", "th12", "th116", "th13",
    "lemma4",
    "prop1", "prop2", "prop3", "prop4",
)

VERDICTS = ("confirmed", "violated", "not_applicable", "budget_skipped")

SCHEMA_VERSION = 1


def _stab_json(value):
    return "inf" if value == INFINITY else int(value)


def _vertices_json(ws):
    return [int(v) for v in ws]


def _edges_json(ys):
    return [[int(u), int(v)] for u, v in sorted(ys)]


def _witness_json(witness, side):
    if witness is None:
        return None
    if side == "vertex":
        return _vertices_json(witness)
    return _edges_json(witness)


def _oracle(g, inv, policy, side):
    if side == "vertex":
        return vertex_stability(g, inv, policy)
    return edge_stability(g, inv, policy)


# ------------------------------------------------------------ bound sweeps
#
# Each upper-bound tag enumerates its parameter choices, keeps the tightest
# applicable bound, and then compares one oracle run against it: the oracle
# exceeds the minimum bound exactly when it exceeds some individual bound.


def _sweep_upper(g, inv, policy, calculator, choices, side):
    best = None
    best_params = None
    for args, params in choices:
        try:
            bound = calculator(g, inv, *args, policy)
        except NotApplicable:
            continue
        if best is None or bound < best:
            best = bound
            best_params = params
    if best is None:
        raise NotApplicable("no parameter choice qualifies")
    res = _oracle(g, inv, policy, side)
    if res.value <= best:
        return "confirmed", _stab_json(best), _stab_json(res.value), None, None
    witness = {
        "parameters": best_params,
        "oracle_witness": _witness_json(res.witness, side),
    }
    return "violated", _stab_json(best), _stab_json(res.value), witness, None


def _run_lemma1(g, inv, policy):
    choices = (((xs,), {"vertices": _vertices_json(xs)}) for xs in vertex_subsets(g))
    return _sweep_upper(g, inv, policy, ub_vs_via_deletion, choices, "vertex")


def _run_lemma2(g, inv, policy):
    choices = (((ys,), {"edges": _edges_json(ys)}) for ys in edge_subsets(g))
    return _sweep_upper(g, inv, policy, ub_es_via_deletion, choices, "edge")


def _run_lemma3(g, inv, policy):
    choices = (
        ((ys,), {"removed": _edges_json(ys)}) for ys in spanning_removed_sets(g)
    )
    return _sweep_upper(g, inv, policy, ub_es_spanning, choices, "edge")


def _run_th1(g, inv, policy):
    choices = (((ws,), {"vertices": _vertices_json(ws)}) for ws in induced_subsets(g))
    return _sweep_upper(g, inv, policy, ub_vs_induced_multiplicative, choices, "vertex")


def _run_th2(g, inv, policy):
    return _sweep_upper(g, inv, policy, ub_vs_min_degree, [((), {})], "vertex")


def _run_th3(g, inv, policy):
    def choices():
        yield ((),), {"vertices": []}
        for xs in vertex_subsets(g):
            yield ((xs,), {"vertices": _vertices_json(xs)})

    return _sweep_upper(g, inv, policy, ub_vs_mining_split, choices(), "vertex")


def _run_th7(g, inv, policy):
    choices = (((u,), {"vertex": u}) for u in range(g.order))
    return _sweep_upper(g, inv, policy, ub_es_vertex_incident, choices, "edge")


def _run_th8(g, inv, policy):
    choices = (((e,), {"edge": list(e)}) for e in g.edge_list)
    return _sweep_upper(g, inv, policy, ub_es_edge_pair, choices, "edge")


def _run_th9(g, inv, policy):
    choices = (((ws,), {"vertices": _vertices_json(ws)}) for ws in induced_subsets(g))
    return _sweep_upper(g, inv, policy, ub_es_subgraph_multiplicative, choices, "edge")


def _run_th10(g, inv, policy):
    choices = (((ws,), {"vertices": _vertices_json(ws)}) for ws in induced_subsets(g))
    return _sweep_upper(g, inv, policy, ub_es_subgraph_mining, choices, "edge")


def _run_th13(g, inv, policy):
    if not spanning_monotone(inv, g, policy):
        raise NotApplicable("not monotone under spanning subgraphs")
    best = None
    best_family = None
    for members in families(family_pool(g, inv, policy)):
        bound = lb_es_family(g, inv, list(members), policy).best()
        if best is None or best < bound:
            best = bound
            best_family = [_edges_json(member) for member in members]
    if best is None:
        raise NotApplicable("no qualifying family")
    res = edge_stability(g, inv, policy)
    sound = res.value == INFINITY or best <= ExtRational(int(res.value))
    if sound:
        return "confirmed", best.to_json(), _stab_json(res.value), None, None
    witness = {
        "family": best_family,
        "oracle_witness": _witness_json(res.witness, "edge"),
    }
    return "violated", best.to_json(), _stab_json(res.value), witness, None


def _run_lemma4(g, inv, policy):
    if not spanning_monotone(inv, g, policy):
        raise NotApplicable("not monotone under spanning subgraphs")
    res = edge_stability(g, inv, policy)
    if res.value == INFINITY:
        raise NotApplicable("edge stability is infinite")
    beta = covering_number(g, inv, policy)
    verdict = "confirmed" if beta == res.value else "violated"
    witness = {"oracle_witness": _witness_json(res.witness, "edge")}
    return verdict, _stab_json(beta), _stab_json(res.value), witness, None


# ------------------------------------------------------- decomposition tags

DECOMP_RULES = {
    "th4": (vs_union_multiplicative_nonzero_nonone, "vertex"),
    "th5": (vs_union_multiplicative_general, "vertex"),
    "th6": (vs_union_mining_increasing, "vertex"),
    "th118": (vs_union_mining_decreasing, "vertex"),
    "th11": (es_union_multiplicative, "edge"),
    "th12": (es_union_mining_decreasing, "edge"),
    "th116": (es_union_mining_increasing, "edge"),
}


def _run_decomposition(tag, g, inv, policy):
    rule, side = DECOMP_RULES[tag]
    dec = rule(g, inv, policy)
    res = _oracle(g, inv, policy, side)
    verdict = "confirmed" if dec.value == res.value else "violated"
    witness = {
        "attained": list(dec.attained),
        "unstable": list(dec.unstable),
        "oracle_witness": _witness_json(res.witness, side),
    }
    return verdict, _stab_json(dec.value), _stab_json(res.value), witness, dec.case


# ----------------------------------------------------------- relation tags

PROP_RULES = {
    "prop1": ("total_chromatic", relation_total_type1),
    "prop2": ("total_chromatic", relation_total_type2),
    "prop3": ("edge_chromatic", relation_edge_class1),
    "prop4": ("edge_chromatic", relation_edge_class2),
}


def _run_prop(tag, g, inv, policy):
    subject, calculator = PROP_RULES[tag]
    if inv.id != subject:
        raise NotApplicable(f"relation concerns {subject}")
    rel = calculator(g, policy)
    verdict = "confirmed" if rel.holds() else "violated"
    return verdict, _stab_json(rel.right), _stab_json(rel.left), None, rel.relation


_RUNNERS = {
    "lemma1": _run_lemma1,
    "lemma2": _run_lemma2,
    "lemma3": _run_lemma3,
    "th1": _run_th1,
    "th2": _run_th2,
    "th3": _run_th3,
    "th7": _run_th7,
    "th8": _run_th8,
    "th9": _run_th9,
    "th10": _run_th10,
    "th13": _run_th13,
    "lemma4": _run_lemma4,
}


def check_tags(tags) -> tuple[str, ...]:
    tags = tuple(tags)
    unknown = [t for t in tags if t not in TAGS]
    if unknown:
        raise ValueError(f"unknown theorem tags {unknown}; known: {', '.join(TAGS)}")
    return tags


def evaluate_pair(tag: str, g: Graph, inv_id: str, policy: SearchPolicy) -> dict:
    """One report row for one (graph, invariant, tag) triple."""
    inv = get_invariant(inv_id)
    code = encode_graph6(g)
    return _evaluate(tag, g, code, inv, policy)


def _evaluate(tag, g, code, inv, policy):
    try:
        if tag in DECOMP_RULES:
            verdict, formula, oracle, witness, case = _run_decomposition(
                tag, g, inv, policy
            )
        elif tag in PROP_RULES:
            verdict, formula, oracle, witness, case = _run_prop(tag, g, inv, policy)
        else:
            verdict, formula, oracle, witness, case = _RUNNERS[tag](g, inv, policy)
    except NotApplicable:
        verdict, formula, oracle, witness, case = "not_applicable", None, None, None, None
    except DomainError:
        verdict, formula, oracle, witness, case = "not_applicable", None, None, None, None
    except BudgetError:
        verdict, formula, oracle, witness, case = "budget_skipped", None, None, None, None
    return {
        "tag": tag,
        "graph6": code,
        "invariant": inv.id,
        "policy": policy.vertex_range,
        "verdict": verdict,
        "formula": formula,
        "oracle": oracle,
        "witness": witness,
        "case": case,
    }


def rows_for_graph(g, inv_ids, tags, policy) -> list[dict]:
    code = encode_graph6(g)
    rows = []
    for inv_id in inv_ids:
        inv = get_invariant(inv_id)
        for tag in tags:
            rows.append(_evaluate(tag, g, code, inv, policy))
    return rows


def _rows_star(task):
    return rows_for_graph(*task)


def iter_rows(graphs, inv_ids, tags, policy=DEFAULT_POLICY, jobs=1):
    """Report rows in corpus x invariant x tag order. Workers split the
    corpus by instance; the ordered reduce keeps output independent of
    the worker count."""
    inv_ids = tuple(inv_ids)
    tags = check_tags(tags)
    if jobs <= 1:
        for g in graphs:
            yield from rows_for_graph(g, inv_ids, tags, policy)
        return
    ctx = multiprocessing.get_context("fork")
    tasks = ((g, inv_ids, tags, policy) for g in graphs)
    with ctx.Pool(jobs) as pool:
        for rows in pool.imap(_rows_star, tasks, chunksize=8):
            yield from rows


@dataclass
class CampaignSummary:
    counts: dict = field(default_factory=dict)  # tag -> verdict -> n
    findings: list = field(default_factory=list)
    rows_total: int = 0

    def tally(self, row):
        per_tag = self.counts.setdefault(
            row["tag"], {verdict: 0 for verdict in VERDICTS}
        )
        per_tag[row["verdict"]] += 1
        self.rows_total += 1
        if row["verdict"] == "violated":
            self.findings.append(row)

    @property
    def violations(self) -> int:
        return sum(c["violated"] for c in self.counts.values())

    @property
    def budget_skips(self) -> int:
        return sum(c["budget_skipped"] for c in self.counts.values())


def run_campaign(graphs, inv_ids, tags, policy=DEFAULT_POLICY, jobs=1):
    """In-memory campaign: (summary, all rows)."""
    tags = check_tags(tags)
    summary = CampaignSummary(counts={t: {v: 0 for v in VERDICTS} for t in tags})
    rows = []
    for row in iter_rows(graphs, inv_ids, tags, policy, jobs):
        summary.tally(row)
        rows.append(row)
    return summary, rows


def write_report(
    path, campaign_meta, graphs, inv_ids, tags, policy=DEFAULT_POLICY,
    jobs=1, timings=False,
) -> CampaignSummary:
    """Stream a campaign to a JSON report file.

    Rows are written as they arrive so corpus-scale reports never sit in
    memory. Identical inputs give byte-identical files; wall time is only
    recorded on request since it would break that.
    """
    tags = check_tags(tags)
    start = time.monotonic()
    summary = CampaignSummary(counts={t: {v: 0 for v in VERDICTS} for t in tags})
    with open(path, "w", encoding="ascii") as fh:
        fh.write('{\n"schema_version": %d,\n"campaign": ' % SCHEMA_VERSION)
        fh.write(json.dumps(campaign_meta))
        fh.write(',\n"reports": [')
        first = True
        for row in iter_rows(graphs, inv_ids, tags, policy, jobs):
            summary.tally(row)
            fh.write("\n" if first else ",\n")
            fh.write(json.dumps(row))
            first = False
        fh.write("\n],\n" if not first else "],\n")
        summary_json = {"per_tag": summary.counts}
        if timings:
            summary_json["wall_time_ms"] = int((time.monotonic() - start) * 1000)
        fh.write('"summary": ')
        fh.write(json.dumps(summary_json))
        fh.write("\n}\n")
    return summary
