"""Brute-force stability searches: curated values, witness contracts,
policy ranges, budgets, and the fast-table/plain-loop agreement."""

import random

import pytest
from fractions import Fraction

from invstab.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
)
from invstab.invariants import get_invariant
from invstab.stability import (
    BudgetError,
    DEFAULT_POLICY,
    INFINITY,
    SearchPolicy,
    clear_caches,
    covering_number,
    edge_stability,
    threshold_edge_stability,
    threshold_vertex_stability,
    vertex_stability,
)
from invstab.values import ExtRational

ALL_RANGE = SearchPolicy(vertex_range="all")


def _vs(g, inv_id, policy=DEFAULT_POLICY):
    return vertex_stability(g, get_invariant(inv_id), policy)


def _es(g, inv_id, policy=DEFAULT_POLICY):
    return edge_stability(g, get_invariant(inv_id), policy)


def test_vertex_stability_examples():
    assert _vs(cycle_graph(4), "min_degree").value == 1
    assert _vs(complete_graph(3), "chromatic").value == 1
    assert _vs(empty_graph(3), "min_degree").value == INFINITY
    assert _vs(empty_graph(3), "min_degree").witness is None


def test_edge_stability_examples():
    assert _es(cycle_graph(3), "girth").value == 1
    assert _es(empty_graph(2), "independent_sets").value == INFINITY
    assert _es(empty_graph(2), "min_degree").value == INFINITY
    assert _es(path_graph(3), "independent_sets").value == 1


def test_threshold_vertex_examples():
    g = cycle_graph(4)
    res = threshold_vertex_stability(g, get_invariant("min_degree"), ExtRational(2))
    assert res.value == 1
    res = threshold_vertex_stability(
        complete_graph(3), get_invariant("min_component_order"), ExtRational(1)
    )
    assert res.value == INFINITY
    res = threshold_vertex_stability(
        complete_graph(3), get_invariant("chromatic"), ExtRational(3)
    )
    assert res.value == 1


def test_threshold_edge_examples():
    res = threshold_edge_stability(
        complete_graph(3), get_invariant("min_component_order"), ExtRational(2)
    )
    assert res.value == 2
    res = threshold_edge_stability(
        cycle_graph(3), get_invariant("girth"), ExtRational(3)
    )
    assert res.value == INFINITY
    res = threshold_edge_stability(
        path_graph(3), get_invariant("max_degree"), ExtRational(2)
    )
    assert res.value == 1


def test_threshold_zero_deletions_allowed():
    # theta above the current value is already satisfied by deleting nothing
    res = threshold_vertex_stability(
        path_graph(3), get_invariant("max_degree"), ExtRational(5)
    )
    assert res.value == 0 and res.witness == ()


def test_covering_number_examples():
    assert covering_number(path_graph(3), get_invariant("max_degree")) == 1
    assert covering_number(cycle_graph(3), get_invariant("girth")) == 1
    assert covering_number(empty_graph(2), get_invariant("girth")) == 0


def test_witnesses_are_minimal_and_change_value():
    for g, inv_id in [
        (cycle_graph(4), "min_degree"),
        (cycle_graph(5), "girth"),
        (path_graph(4), "independent_sets"),
    ]:
        inv = get_invariant(inv_id)
        res = vertex_stability(g, inv)
        if res.value != INFINITY:
            assert len(res.witness) == res.value
            assert inv.raw(g.delete_vertices(res.witness)) != inv.raw(g)
        res = edge_stability(g, inv)
        if res.value != INFINITY:
            assert len(res.witness) == res.value
            assert inv.raw(g.delete_edges(res.witness)) != inv.raw(g)


def test_enumeration_order_first_witness():
    # C4 min_degree: vertex 0 is the lexicographically first success
    assert _vs(cycle_graph(4), "min_degree").witness == (0,)
    assert _es(cycle_graph(3), "girth").witness == ((0, 1),)


def test_vertex_range_policy():
    k1 = complete_graph(1)
    assert _vs(k1, "independent_sets").value == INFINITY
    assert _vs(k1, "independent_sets", ALL_RANGE).value == 1
    # range "all" can only be smaller or equal
    for g in (path_graph(3), cycle_graph(4), empty_graph(2)):
        for inv_id in ("independent_sets", "min_degree", "girth"):
            proper = _vs(g, inv_id).value
            full = _vs(g, inv_id, ALL_RANGE).value
            assert full <= proper


def test_budget_error_names_cap():
    tiny = SearchPolicy(max_universe=4)
    with pytest.raises(BudgetError) as err:
        vertex_stability(cycle_graph(4), get_invariant("min_degree"), tiny)
    assert err.value.cap == 4
    with pytest.raises(BudgetError):
        edge_stability(cycle_graph(5), get_invariant("girth"), tiny)


def test_lemma_style_composition_properties():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(2, 5)
        pairs = [(i, j) for j in range(n) for i in range(j)]
        edges = [p for p in pairs if rng.random() < 0.5]
        g = Graph.build(n, edges)
        inv = get_invariant(rng.choice(["min_degree", "girth", "independent_sets"]))
        base_vs = vertex_stability(g, inv).value
        xs = [v for v in range(n) if rng.random() < 0.3][: n - 1]
        if xs:
            rest = vertex_stability(g.delete_vertices(xs), inv).value
            assert base_vs <= len(xs) + rest
        base_es = edge_stability(g, inv).value
        ys = [e for e in edges if rng.random() < 0.3]
        rest = edge_stability(g.delete_edges(ys), inv).value
        assert base_es <= len(ys) + rest


def test_table_and_plain_loop_agree():
    """The vectorized edge-subset table must give the same values and
    witnesses as the plain lexicographic loop."""
    import invstab.stability as stab

    rng = random.Random(42)
    cases = []
    for _ in range(12):
        n = rng.randint(4, 6)
        pairs = [(i, j) for j in range(n) for i in range(j)]
        edges = [p for p in pairs if rng.random() < 0.6]
        g = Graph.build(n, edges)
        for inv_id in ("min_degree", "max_degree", "min_component_order"):
            cases.append((g, inv_id))

    results = {}
    for forced_min in (1 << 0, 1 << 30):  # always-table vs never-table
        clear_caches()
        old = stab._TABLE_MIN_SUBSETS
        stab._TABLE_MIN_SUBSETS = forced_min
        try:
            for idx, (g, inv_id) in enumerate(cases):
                inv = get_invariant(inv_id)
                es = edge_stability(g, inv)
                tes = threshold_edge_stability(g, inv, ExtRational(Fraction(2)))
                cov = covering_number(g, inv)
                results.setdefault(idx, []).append(
                    (es.value, es.witness, tes.value, tes.witness, cov)
                )
        finally:
            stab._TABLE_MIN_SUBSETS = old
    clear_caches()
    for idx, (a, b) in results.items():
        assert a == b, f"table/plain disagree on case {idx}"


def test_search_caches_are_keyed_by_policy():
    g = complete_graph(1)
    assert _vs(g, "independent_sets").value == INFINITY
    assert _vs(g, "independent_sets", ALL_RANGE).value == 1
    assert _vs(g, "independent_sets").value == INFINITY


def test_domain_error_policy_on_deletions():
    # class_edge is undefined once deletions strip all edges; by default that
    # counts as a change, under "unchanged" it does not
    g = complete_graph(2)
    inv = get_invariant("class_edge")
    assert edge_stability(g, inv).value == 1
    keep = SearchPolicy(on_domain_error="unchanged")
    assert edge_stability(g, inv, keep).value == INFINITY
