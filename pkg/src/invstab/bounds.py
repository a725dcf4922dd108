"""Upper and lower bound calculators for stability numbers.

Each calculator evaluates one bound at one explicit instantiation (a vertex
subset, an edge, a family of spanning subgraphs, ...) and raises
NotApplicable when its hypotheses fail, so campaigns can sweep candidate
parameters and verify every bound that actually fires. Enumeration caps for
the sweeps live at the bottom; they limit breadth, never soundness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .decomposition import NotApplicable
from .graphs import (
    Graph,
    boundary_edges,
    complete_graph,
    components,
    empty_graph,
    induced_subgraph,
    open_neighborhood,
)
from .invariants import (
    DomainError,
    Invariant,
    NONE,
    check_monotone_on_instance,
    get_invariant,
    total_bound_ok,
)
from .stability import (
    DEFAULT_POLICY,
    INFINITY,
    SearchPolicy,
    _cached_raw,
    covering_number,
    edge_stability,
    vertex_stability,
)
from .values import ExtRational


def _add(a, b) -> float:
    return INFINITY if INFINITY in (a, b) else a + b


# ------------------------------------------------- vertex upper bounds


def ub_vs_via_deletion(
    g: Graph, inv: Invariant, xs, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Delete xs first, then stabilize the rest: |xs| + vs(g-xs)."""
    xs = tuple(sorted(set(xs)))
    if len(xs) >= g.order:
        raise NotApplicable("deletion set must be a proper vertex subset")
    try:
        rest = vertex_stability(g.delete_vertices(xs), inv, policy)
    except DomainError:
        raise NotApplicable("value undefined after deletion")
    return _add(len(xs), rest.value)


def ub_vs_induced_multiplicative(
    g: Graph, inv: Invariant, ws, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Cut an induced subgraph loose by removing its outside neighbors,
    then stabilize it. Needs a multiplicative invariant that never
    vanishes, so the freed factor cannot be cancelled."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    if inv.can_be_zero:
        raise NotApplicable("invariant can take the value zero")
    ws = tuple(sorted(set(ws)))
    if not ws:
        raise NotApplicable("induced subgraph is empty")
    cut = open_neighborhood(g, ws)
    sub = induced_subgraph(g, ws)
    return _add(len(cut), vertex_stability(sub, inv, policy).value)


def ub_vs_min_degree(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Isolate a minimum-degree vertex and delete it: bound delta + 1.
    Needs a never-zero multiplicative invariant whose value on a single
    vertex is not 1, and a non-complete graph so something else survives."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    if inv.can_be_zero:
        raise NotApplicable("invariant can take the value zero")
    if _cached_raw(inv, complete_graph(1)) == 1:
        raise NotApplicable("single-vertex value is 1")
    if g.order == 0 or g.is_complete():
        raise NotApplicable("graph is complete")
    return min(g.degrees()) + 1


def ub_vs_mining_split(
    g: Graph, inv: Invariant, xs, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Delete xs so the rest splits into a strictly smaller-valued piece
    and a strictly larger remainder; stabilizing the small piece then
    moves the overall minimum. The piece is the union of the components
    attaining the minimum after deletion."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    xs = tuple(sorted(set(xs)))
    if len(xs) >= g.order:
        raise NotApplicable("deletion set must be a proper vertex subset")
    rest = g.delete_vertices(xs)
    sp = components(rest)
    if len(sp) < 2:
        raise NotApplicable("deletion does not split the graph")
    vals = [_cached_raw(inv, part) for part in sp.parts]
    low = min(vals)
    keep = [i for i, v in enumerate(vals) if v == low]
    if len(keep) == len(sp):
        raise NotApplicable("no strictly larger remainder")
    low_vertices = sorted(
        v for i in keep for v in sp.embeddings[i]
    )
    piece = induced_subgraph(rest, low_vertices)
    return _add(len(xs), vertex_stability(piece, inv, policy).value)


# --------------------------------------------------- edge upper bounds


def ub_es_via_deletion(
    g: Graph, inv: Invariant, ys, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Delete the edge set ys first, then stabilize: |ys| + es(g-ys)."""
    ys = tuple(sorted(set(ys)))
    try:
        rest = edge_stability(g.delete_edges(ys), inv, policy)
    except DomainError:
        raise NotApplicable("value undefined after deletion")
    return _add(len(ys), rest.value)


def ub_es_spanning(
    g: Graph, inv: Invariant, removed, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """A spanning subgraph one edge away from changing its value keeps the
    whole graph within |removed| + 1."""
    removed = tuple(sorted(set(removed)))
    sub = g.delete_edges(removed)
    try:
        if edge_stability(sub, inv, policy).value != 1:
            raise NotApplicable("spanning subgraph is not one edge from change")
    except DomainError:
        raise NotApplicable("value undefined on spanning subgraph")
    return 1 + len(removed)


def ub_es_vertex_incident(
    g: Graph, inv: Invariant, u: int, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Strip every edge at u, comparing the freed single-vertex factor
    against the value with u deleted: bound d(u)."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    if not (0 <= u < g.order):
        raise NotApplicable("no such vertex")
    fg = _cached_raw(inv, g)
    fu = _cached_raw(inv, g.delete_vertices((u,)))
    f1 = _cached_raw(inv, complete_graph(1))
    if fu > fg and f1 >= 1:
        pass
    elif fu == fg and fg != 0 and f1 != 1:
        pass
    elif fu < fg and f1 <= 1:
        pass
    else:
        raise NotApplicable("no usable comparison at this vertex")
    return g.degree(u)


def ub_es_edge_pair(
    g: Graph, inv: Invariant, edge, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Strip both endpoints of an edge down to that single edge:
    bound d(x) + d(y) - 1."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    k2 = _cached_raw(inv, complete_graph(2))
    two_k1 = _cached_raw(inv, empty_graph(2))
    if k2 == two_k1:
        raise NotApplicable("single edge is invisible to this invariant")
    x, y = min(edge), max(edge)
    if not g.has_edge(x, y):
        raise NotApplicable("no such edge")
    if _cached_raw(inv, g.delete_vertices((x, y))) == 0:
        raise NotApplicable("remainder value is zero")
    return g.degree(x) + g.degree(y) - 1


def ub_es_subgraph_multiplicative(
    g: Graph, inv: Invariant, ws, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Cut the boundary of an induced subgraph, then stabilize it:
    es(H) + boundary size, provided the detached remainder cannot cancel."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    ws = tuple(sorted(set(ws)))
    if not ws:
        raise NotApplicable("induced subgraph is empty")
    rest = g.delete_vertices(ws)
    if _cached_raw(inv, rest) == 0:
        raise NotApplicable("remainder value is zero")
    sub = induced_subgraph(g, ws)
    cut = boundary_edges(g, ws)
    return _add(len(cut), edge_stability(sub, inv, policy).value)


def ub_es_subgraph_mining(
    g: Graph, inv: Invariant, ws, policy: SearchPolicy = DEFAULT_POLICY
) -> float:
    """Mining analog of the boundary cut: the induced subgraph must carry
    a strictly smaller value than the detached remainder."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    ws = tuple(sorted(set(ws)))
    if not ws:
        raise NotApplicable("induced subgraph is empty")
    sub = induced_subgraph(g, ws)
    rest = g.delete_vertices(ws)
    if not _cached_raw(inv, sub) < _cached_raw(inv, rest):
        raise NotApplicable("subgraph value does not dominate")
    cut = boundary_edges(g, ws)
    return _add(len(cut), edge_stability(sub, inv, policy).value)


# ------------------------------------------------------ edge lower bound


@dataclass(frozen=True)
class FamilyBound:
    """Two lower bounds for es(g) from a family of same-valued nonempty
    spanning subgraphs: the stability sum scaled by the worst edge
    multiplicity, and the sum corrected for shared edges. Values are exact;
    the overlap bound may be negative (then vacuous)."""

    scaled: object  # Fraction, or INFINITY
    overlap: object  # int, or INFINITY
    multiplicity: int
    shared_edges: int

    def best(self) -> ExtRational:
        cands = [c for c in (self.scaled, self.overlap) if c != INFINITY]
        if len(cands) < 2:
            return ExtRational(infinite=True)
        return ExtRational(max(Fraction(0), *map(Fraction, cands)))


def spanning_monotone(
    inv: Invariant, g: Graph, policy: SearchPolicy = DEFAULT_POLICY
) -> bool:
    """Monotone in either direction over spanning subgraphs; flag first,
    instance enumeration as fallback."""
    if inv.monotone_spanning != NONE:
        return True
    for direction in ("increasing", "decreasing"):
        if check_monotone_on_instance(
            inv, g, direction, scope="spanning", max_universe=policy.max_universe
        ):
            return True
    return False


def lb_es_family(
    g: Graph, inv: Invariant, members, policy: SearchPolicy = DEFAULT_POLICY
) -> FamilyBound:
    """members: edge subsets, each a nonempty spanning subgraph whose value
    matches f(g). Not checked here beyond the hypotheses; callers build
    families with family_pool()."""
    if not spanning_monotone(inv, g, policy):
        raise NotApplicable("invariant is not monotone over spanning subgraphs")
    members = [frozenset(m) for m in members]
    if not members:
        raise NotApplicable("empty family")
    base = _cached_raw(inv, g)
    for m in members:
        if not m:
            raise NotApplicable("family member has no edges")
        if not m <= g.edges:
            raise NotApplicable("family member is not a spanning subgraph")
        if _cached_raw(inv, g.subgraph_with_edges(m)) != base:
            raise NotApplicable("family member changes the value")
    counts: dict = {}
    for m in members:
        for e in m:
            counts[e] = counts.get(e, 0) + 1
    shared = sum(1 for c in counts.values() if c >= 2)
    mult = max([1] + list(counts.values()))
    stabilities = [
        edge_stability(g.subgraph_with_edges(m), inv, policy).value for m in members
    ]
    if INFINITY in stabilities:
        return FamilyBound(INFINITY, INFINITY, mult, shared)
    total = sum(stabilities)
    return FamilyBound(
        Fraction(total, mult), total - shared * (mult - 1), mult, shared
    )


# -------------------------------------------- chromatic stability relations


@dataclass(frozen=True)
class Relation:
    """One verified relation between two vertex stabilities: left REL right,
    where REL is '>=' or '=='. Values may be INFINITY."""

    relation: str
    left: float
    right: float
    detail: dict

    def holds(self) -> bool:
        if self.relation == ">=":
            return self.left >= self.right
        return self.left == self.right


def _vs(g, inv_id, policy):
    return vertex_stability(g, get_invariant(inv_id), policy).value


def relation_total_type1(g: Graph, policy: SearchPolicy = DEFAULT_POLICY) -> Relation:
    """Total chromatic number at its floor: its stability dominates the
    max-degree stability."""
    if not g.edges:
        raise NotApplicable("graph has no edges")
    tc = get_invariant("total_chromatic")
    if _cached_raw(tc, g) != max(g.degrees()) + 1:
        raise NotApplicable("total chromatic number is not at its floor")
    return Relation(
        ">=",
        _vs(g, "total_chromatic", policy),
        _vs(g, "max_degree", policy),
        {},
    )


def relation_total_type2(g: Graph, policy: SearchPolicy = DEFAULT_POLICY) -> Relation:
    """Total chromatic number one above its floor: stability equals the
    cheaper of dropping the max degree or the type. Requires the two-over
    bound to hold hereditarily, which is checked instance by instance."""
    if not g.edges:
        raise NotApplicable("graph has no edges")
    tc = get_invariant("total_chromatic")
    if _cached_raw(tc, g) != max(g.degrees()) + 2:
        raise NotApplicable("total chromatic number is not one above its floor")
    if not _total_bound_hereditary(g):
        raise NotApplicable("two-over-degree bound fails on an induced subgraph")
    right = min(_vs(g, "max_degree", policy), _vs(g, "class_total", policy))
    return Relation("==", _vs(g, "total_chromatic", policy), right, {})


def relation_edge_class1(g: Graph, policy: SearchPolicy = DEFAULT_POLICY) -> Relation:
    """Edge chromatic number at the max degree: its stability dominates
    the max-degree stability."""
    if not g.edges:
        raise NotApplicable("graph has no edges")
    ec = get_invariant("edge_chromatic")
    if _cached_raw(ec, g) != max(g.degrees()):
        raise NotApplicable("graph is not class one")
    return Relation(
        ">=",
        _vs(g, "edge_chromatic", policy),
        _vs(g, "max_degree", policy),
        {},
    )


def relation_edge_class2(g: Graph, policy: SearchPolicy = DEFAULT_POLICY) -> Relation:
    """Edge chromatic number one above the max degree: stability equals the
    cheaper of dropping the max degree or the class."""
    if not g.edges:
        raise NotApplicable("graph has no edges")
    ec = get_invariant("edge_chromatic")
    if _cached_raw(ec, g) != max(g.degrees()) + 1:
        raise NotApplicable("graph is not class two")
    right = min(_vs(g, "max_degree", policy), _vs(g, "class_edge", policy))
    return Relation("==", _vs(g, "edge_chromatic", policy), right, {})


def _total_bound_hereditary(g: Graph) -> bool:
    for mask in range(1, 1 << g.order):
        drop = [v for v in range(g.order) if not (mask >> v) & 1]
        if not total_bound_ok(g.delete_vertices(drop)):
            return False
    return True


# -------------------------------------------------- parameter enumeration
#
# Sweep caps: breadth-limited, size-ascending, lexicographic. A cap skips
# instantiations; it never weakens a bound that is actually reported.

VERTEX_SET_CAP_ORDER = 12
EDGE_SET_MAX_SIZE = 2
SPANNING_REMOVED_MAX = 3
FAMILY_POOL_CAP = 12
FAMILY_MAX_SIZE = 3


def vertex_subsets(g: Graph):
    """Nonempty proper vertex subsets; above VERTEX_SET_CAP_ORDER only
    singletons and pairs."""
    top = g.order - 1 if g.order <= VERTEX_SET_CAP_ORDER else min(2, g.order - 1)
    for k in range(1, top + 1):
        yield from combinations(range(g.order), k)


def induced_subsets(g: Graph):
    """Nonempty vertex subsets, the full set included."""
    cap = g.order if g.order <= VERTEX_SET_CAP_ORDER else 2
    for k in range(1, cap + 1):
        yield from combinations(range(g.order), k)


def edge_subsets(g: Graph, max_size: int = EDGE_SET_MAX_SIZE):
    for k in range(1, min(max_size, g.size) + 1):
        yield from combinations(g.edge_list, k)


def spanning_removed_sets(g: Graph):
    for k in range(0, min(SPANNING_REMOVED_MAX, g.size) + 1):
        yield from combinations(g.edge_list, k)


def family_pool(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> list[frozenset]:
    """First few nonempty spanning subgraphs keeping the value, by ascending
    edge-subset mask over the sorted edge list."""
    base = _cached_raw(inv, g)
    edges = g.edge_list
    pool = []
    for mask in range(1, 1 << g.size):
        kept = frozenset(edges[i] for i in range(g.size) if (mask >> i) & 1)
        try:
            if _cached_raw(inv, g.subgraph_with_edges(kept)) == base:
                pool.append(kept)
        except DomainError:
            continue
        if len(pool) >= FAMILY_POOL_CAP:
            break
    return pool


def families(pool):
    for t in range(1, FAMILY_MAX_SIZE + 1):
        yield from combinations(pool, t)
