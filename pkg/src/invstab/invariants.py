"""Graph invariants with the metadata the stability machinery needs.

Each invariant carries flags describing how it behaves on disjoint unions
(product or minimum), how it moves under vertex/edge deletion, its values
on the one-vertex and null graphs, and a proven global floor on its values.
Values are exact: big-integer counts, small integers, or +infinity.

Internally evaluators work on raw values (int, Fraction, or float("inf"))
to keep subset searches cheap; the public evaluate() wraps them in
ExtRational. The class_* invariants are partial: they raise DomainError on
edgeless graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .graphs import Graph, components
from .values import ExtRational, INF

RAW_INF = float("inf")
INCREASING = "increasing"
DECREASING = "decreasing"
NONE = "none"


class DomainError(ValueError):
    """The invariant is undefined on this graph (e.g. class of an empty graph)."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------- degree-ish


def raw_min_degree(g: Graph):
    if g.order == 0:
        return RAW_INF
    return min(_popcount(m) for m in g.adjacency)


def raw_max_degree(g: Graph):
    if g.order == 0:
        return 0
    return max(_popcount(m) for m in g.adjacency)


def raw_girth(g: Graph):
    """Length of a shortest cycle; +inf when acyclic.

    BFS from every vertex; a non-tree contact at distances d(v), d(u) closes
    a walk of length d(v)+d(u)+1 containing a cycle no longer than that, and
    for a root on a shortest cycle the walk is exactly that cycle.
    """
    if not g.edges:
        return RAW_INF
    n = g.order
    adj = g.adjacency
    best = RAW_INF
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            if best != RAW_INF and dist[v] * 2 >= best:
                break
            mask = adj[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if dist[u] == -1:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif u != parent[v]:
                    cand = dist[v] + dist[u] + 1
                    if cand < best:
                        best = cand
    return best


def raw_min_component_order(g: Graph):
    if g.order == 0:
        return RAW_INF
    seen = [False] * g.order
    best = g.order
    for root in range(g.order):
        if seen[root]:
            continue
        size = 0
        stack = [root]
        seen[root] = True
        while stack:
            v = stack.pop()
            size += 1
            mask = g.adjacency[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        if size < best:
            best = size
    return best


# ---------------------------------------------------------------- colorings


def _color_elements(conflicts: list[int], k: int) -> bool:
    """Backtracking proper coloring of elements 0..len-1 with colors 1..k.

    conflicts[i] is a bitmask over earlier elements that i must differ from.
    Elements are colored in index order; a fresh color is only opened when
    all used ones fail, which breaks color symmetry deterministically.
    """
    n = len(conflicts)
    colors = [0] * n

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        bad = 0
        mask = conflicts[i]
        while mask:
            low = mask & -mask
            j = low.bit_length() - 1
            mask ^= low
            bad |= 1 << colors[j]
        limit = min(k, used + 1)
        for c in range(1, limit + 1):
            if bad & (1 << c):
                continue
            colors[i] = c
            if place(i + 1, max(used, c)):
                return True
        colors[i] = 0
        return False

    return place(0, 0)


def raw_chromatic(g: Graph):
    if g.order == 0:
        return 0
    conflicts = [g.adjacency[v] & ((1 << v) - 1) for v in range(g.order)]
    for k in range(1, g.order + 1):
        if _color_elements(conflicts, k):
            return k
    raise RuntimeError("unreachable: n colors always suffice")


def _edge_conflicts(g: Graph) -> list[int]:
    edges = g.edge_list
    out = []
    for i, (u, v) in enumerate(edges):
        mask = 0
        for j in range(i):
            a, b = edges[j]
            if a in (u, v) or b in (u, v):
                mask |= 1 << j
        out.append(mask)
    return out


def raw_edge_chromatic(g: Graph):
    if not g.edges:
        return 0
    delta = raw_max_degree(g)
    conflicts = _edge_conflicts(g)
    for k in (delta, delta + 1):
        if _color_elements(conflicts, k):
            return k
    raise RuntimeError(f"edge coloring exceeded max degree + 1 on {g!r}")


def raw_total_chromatic(g: Graph):
    if g.order == 0:
        return 0
    edges = g.edge_list
    n = g.order
    conflicts = [g.adjacency[v] & ((1 << v) - 1) for v in range(n)]
    for i, (u, v) in enumerate(edges):
        mask = (1 << u) | (1 << v)
        for j in range(i):
            a, b = edges[j]
            if a in (u, v) or b in (u, v):
                mask |= 1 << (n + j)
        conflicts.append(mask)
    delta = raw_max_degree(g)
    k = max(1, delta + 1)
    while True:
        if _color_elements(conflicts, k):
            return k
        k += 1


def raw_class_total(g: Graph):
    if not g.edges:
        raise DomainError("total-coloring class undefined on edgeless graphs")
    return raw_total_chromatic(g) - raw_max_degree(g)


def raw_class_edge(g: Graph):
    if not g.edges:
        raise DomainError("edge-coloring class undefined on edgeless graphs")
    return raw_edge_chromatic(g) - raw_max_degree(g) + 1


def total_bound_ok(g: Graph) -> bool:
    """Instance check: total chromatic number at most max degree + 2."""
    if g.order == 0:
        return True
    return raw_total_chromatic(g) <= raw_max_degree(g) + 2


# ---------------------------------------------------------------- counting


def raw_independent_sets(g: Graph):
    n = g.order
    adj = g.adjacency
    ok = bytearray(1 << n)
    ok[0] = 1
    total = 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if ok[rest] and not (adj[v] & rest):
            ok[mask] = 1
            total += 1
    return total


def raw_spanning_forests(g: Graph):
    """Number of acyclic edge subsets, counted by include/skip recursion
    with a rollback union-find (no path compression)."""
    edges = g.edge_list
    m = len(edges)
    parent = list(range(g.order))
    size = [1] * g.order

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def count(i: int) -> int:
        if i == m:
            return 1
        total = count(i + 1)
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            total += count(i + 1)
            parent[rv] = rv
            size[ru] -= size[rv]
        return total

    return count(0)


def raw_matchings(g: Graph):
    adj = g.adjacency
    full = (1 << g.order) - 1
    memo: dict[int, int] = {}

    def count(avail: int) -> int:
        pick = avail
        v = -1
        while pick:
            low = pick & -pick
            cand = low.bit_length() - 1
            if adj[cand] & avail:
                v = cand
                break
            pick ^= low
        if v < 0:
            return 1
        if avail in memo:
            return memo[avail]
        total = count(avail ^ (1 << v))
        mask = adj[v] & avail
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            mask ^= low
            total += count(avail ^ (1 << v) ^ (1 << u))
        memo[avail] = total
        return total

    return count(full)


def raw_perfect_matchings(g: Graph):
    if g.order % 2:
        return 0
    adj = g.adjacency
    full = (1 << g.order) - 1
    memo: dict[int, int] = {}

    def count(avail: int) -> int:
        if avail == 0:
            return 1
        if avail in memo:
            return memo[avail]
        low = avail & -avail
        v = low.bit_length() - 1
        total = 0
        mask = adj[v] & avail
        while mask:
            lo = mask & -mask
            u = lo.bit_length() - 1
            mask ^= lo
            total += count(avail ^ (1 << v) ^ (1 << u))
        memo[avail] = total
        return total

    return count(full)


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Invariant:
    """An invariant plus the behavioral metadata the rules gate on."""

    id: str
    raw: Callable[[Graph], object]
    multiplicative: bool
    mining: bool
    monotone_induced: str
    monotone_spanning: str
    value_on_k1: Optional[ExtRational]
    value_on_null: Optional[ExtRational]
    can_be_zero: bool
    value_floor: ExtRational

    def __post_init__(self):
        if self.multiplicative and self.mining:
            raise ValueError("multiplicative and mining are mutually exclusive")

    def evaluate(self, g: Graph) -> ExtRational:
        value = self.raw(g)
        return INF if value == RAW_INF else ExtRational(value)

    def __repr__(self) -> str:
        return f"Invariant({self.id})"


def _inv(id, raw, *, multiplicative=False, mining=False, mono_ind=NONE,
         mono_span=NONE, on_k1, on_null, can_be_zero, floor) -> Invariant:
    return Invariant(
        id=id,
        raw=raw,
        multiplicative=multiplicative,
        mining=mining,
        monotone_induced=mono_ind,
        monotone_spanning=mono_span,
        value_on_k1=on_k1,
        value_on_null=on_null,
        can_be_zero=can_be_zero,
        value_floor=floor,
    )


_F = ExtRational

INVARIANTS: dict[str, Invariant] = {
    inv.id: inv
    for inv in [
        _inv("min_degree", raw_min_degree, mining=True, mono_span=INCREASING,
             on_k1=_F(0), on_null=INF, can_be_zero=True, floor=_F(0)),
        _inv("max_degree", raw_max_degree, mono_ind=INCREASING, mono_span=INCREASING,
             on_k1=_F(0), on_null=_F(0), can_be_zero=True, floor=_F(0)),
        _inv("girth", raw_girth, mining=True, mono_ind=DECREASING, mono_span=DECREASING,
             on_k1=INF, on_null=INF, can_be_zero=False, floor=_F(3)),
        _inv("min_component_order", raw_min_component_order, mining=True,
             mono_span=INCREASING, on_k1=_F(1), on_null=INF, can_be_zero=False,
             floor=_F(1)),
        _inv("chromatic", raw_chromatic, mono_span=INCREASING,
             on_k1=_F(1), on_null=_F(0), can_be_zero=True, floor=_F(0)),
        _inv("edge_chromatic", raw_edge_chromatic, mono_span=INCREASING,
             on_k1=_F(0), on_null=_F(0), can_be_zero=True, floor=_F(0)),
        _inv("total_chromatic", raw_total_chromatic, mono_span=INCREASING,
             on_k1=_F(1), on_null=_F(0), can_be_zero=True, floor=_F(0)),
        _inv("class_total", raw_class_total,
             on_k1=None, on_null=None, can_be_zero=False, floor=_F(1)),
        _inv("class_edge", raw_class_edge,
             on_k1=None, on_null=None, can_be_zero=False, floor=_F(1)),
        _inv("independent_sets", raw_independent_sets, multiplicative=True,
             mono_span=DECREASING, on_k1=_F(2), on_null=_F(1), can_be_zero=False,
             floor=_F(1)),
        _inv("spanning_forests", raw_spanning_forests, multiplicative=True,
             mono_span=INCREASING, on_k1=_F(1), on_null=_F(1), can_be_zero=False,
             floor=_F(1)),
        _inv("matchings", raw_matchings, multiplicative=True, mono_span=INCREASING,
             on_k1=_F(1), on_null=_F(1), can_be_zero=False, floor=_F(1)),
        _inv("perfect_matchings", raw_perfect_matchings, multiplicative=True,
             mono_span=INCREASING, on_k1=_F(0), on_null=_F(1), can_be_zero=True,
             floor=_F(0)),
    ]
}


def get_invariant(inv_id: str) -> Invariant:
    try:
        return INVARIANTS[inv_id]
    except KeyError:
        known = ", ".join(INVARIANTS)
        raise KeyError(f"unknown invariant {inv_id!r}; known: {known}") from None


# ------------------------------------------------- instance monotonicity

_MONOTONE_CACHE: dict[tuple, bool] = {}
_MONOTONE_CACHE_CAP = 200_000


def clear_monotone_cache() -> None:
    _MONOTONE_CACHE.clear()


def check_monotone_on_instance(
    inv: Invariant,
    g: Graph,
    direction: str,
    scope: str = "induced",
    max_universe: int = 1 << 20,
) -> bool:
    """Whether f is monotone in the stated direction on this one instance.

    Induced scope quantifies over induced subgraphs on every nonempty vertex
    subset; spanning scope over every spanning subgraph (edge subset).
    "increasing" asserts f(g) >= f(H) for each subgraph H in scope,
    "decreasing" asserts f(g) <= f(H). A subgraph where f is undefined
    counts as a violation.
    """
    if direction not in (INCREASING, DECREASING):
        raise ValueError(f"direction must be increasing/decreasing, got {direction!r}")
    if scope not in ("induced", "spanning"):
        raise ValueError(f"scope must be induced/spanning, got {scope!r}")
    universe = g.order if scope == "induced" else len(g.edges)
    if (1 << universe) > max_universe:
        from .stability import BudgetError

        raise BudgetError(universe, max_universe)
    key = (inv.id, g, direction, scope)
    hit = _MONOTONE_CACHE.get(key)
    if hit is not None:
        return hit
    base = inv.raw(g)
    if scope == "induced":
        subgraphs = _induced_variants(g)
    else:
        subgraphs = _spanning_variants(g)
    result = True
    for h in subgraphs:
        try:
            val = inv.raw(h)
        except DomainError:
            result = False
            break
        if direction == INCREASING:
            if not (base == val or val < base):
                result = False
                break
        else:
            if not (base == val or base < val):
                result = False
                break
    if len(_MONOTONE_CACHE) >= _MONOTONE_CACHE_CAP:
        _MONOTONE_CACHE.clear()
    _MONOTONE_CACHE[key] = result
    return result


def _induced_variants(g: Graph):
    n = g.order
    verts = list(range(n))
    for mask in range(1, 1 << n):
        drop = [v for v in verts if not (mask >> v) & 1]
        yield g.delete_vertices(drop)


def _spanning_variants(g: Graph):
    edges = g.edge_list
    m = len(edges)
    for mask in range(1 << m):
        yield Graph(g.order, frozenset(edges[i] for i in range(m) if (mask >> i) & 1))


def components_monotone(
    inv: Invariant,
    split,
    direction: str,
    scope: str = "induced",
    max_universe: int = 1 << 20,
) -> bool:
    """Per-component monotonicity: every component monotone over its own
    induced (or spanning) subgraphs. This is the hypothesis the union rules
    actually use. A proof-level global flag settles the question without
    enumeration, in either direction: an invariant proven monotone one way
    is never gated in as the other (its degenerate instances belong to the
    opposite rule)."""
    flag = inv.monotone_induced if scope == "induced" else inv.monotone_spanning
    if flag != NONE:
        return flag == direction
    return all(
        check_monotone_on_instance(
            inv, part, direction, scope=scope, max_universe=max_universe
        )
        for part in split.parts
    )
