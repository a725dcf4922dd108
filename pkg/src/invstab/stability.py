"""Brute-force stability searches.

The vertex stability of an invariant f on g is the least number of vertices
whose deletion changes f; edge stability is the analog over edge deletions.
Searches enumerate candidate subsets by ascending size, then lexicographic
order on sorted labels, so the first success is the canonical witness.

Large edge searches for min_degree / max_degree / min_component_order go
through vectorized full value tables; the table decides the answer and the
plain lexicographic loop then recovers the witness at the found size, so
results are identical to the plain path (the tests assert this parity).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .graphs import Graph, Edge
from .invariants import DomainError, Invariant, RAW_INF
from .values import ExtRational

INFINITY = float("inf")

PROPER = "proper"
ALL = "all"
CHANGED = "changed"
UNCHANGED = "unchanged"

_TABLE_MIN_SUBSETS = 1 << 10
_TABLE_INVARIANTS = {"min_degree", "max_degree", "min_component_order"}


class BudgetError(RuntimeError):
    """Subset universe too large for the configured search budget."""

    def __init__(self, universe_bits: int, cap: int):
        super().__init__(
            f"2^{universe_bits} candidate subsets exceed the budget cap of {cap}"
        )
        self.universe_bits = universe_bits
        self.cap = cap


@dataclass(frozen=True)
class SearchPolicy:
    """Knobs shared by every stability search.

    vertex_range "proper" forbids deleting every vertex; "all" allows it.
    on_domain_error decides whether an undefined value after deletion counts
    as a change (only consulted when the original value is defined).
    """

    vertex_range: str = PROPER
    max_universe: int = 1 << 20
    on_domain_error: str = CHANGED

    def __post_init__(self):
        if self.vertex_range not in (PROPER, ALL):
            raise ValueError(f"vertex_range must be proper/all, got {self.vertex_range!r}")
        if self.on_domain_error not in (CHANGED, UNCHANGED):
            raise ValueError(
                f"on_domain_error must be changed/unchanged, got {self.on_domain_error!r}"
            )
        if self.max_universe < 1:
            raise ValueError("max_universe must be positive")

    def to_json(self) -> dict:
        return {
            "vertex_range": self.vertex_range,
            "max_universe": self.max_universe,
            "on_domain_error": self.on_domain_error,
        }


DEFAULT_POLICY = SearchPolicy()


@dataclass(frozen=True)
class StabilityResult:
    """Search outcome: minimal size (or infinity) plus the first witness."""

    value: float  # nonnegative int, or INFINITY
    witness: Optional[tuple]

    @property
    def infinite(self) -> bool:
        return self.value == INFINITY

    def value_json(self):
        return "inf" if self.infinite else int(self.value)


_NO_RESULT = StabilityResult(INFINITY, None)

# ----------------------------------------------------------- result caches
#
# Bound and decomposition campaigns hammer the same small subgraphs, so raw
# values and whole search results are memoized. On overflow only entries for
# graphs above order 5 are dropped; the small graphs are the hot set.

_VALUE_CACHE_CAP = 600_000
_SEARCH_CACHE_CAP = 200_000
_value_cache: dict = {}
_search_cache: dict = {}
_DOMAIN_ERROR = object()


def _evict(cache: dict):
    survivors = {k: v for k, v in cache.items() if k[1].order <= 5}
    cache.clear()
    cache.update(survivors)


def _cached_raw(inv: Invariant, g: Graph):
    key = (inv.id, g)
    hit = _value_cache.get(key)
    if hit is None:
        try:
            hit = inv.raw(g)
        except DomainError:
            hit = _DOMAIN_ERROR
        if len(_value_cache) >= _VALUE_CACHE_CAP:
            _evict(_value_cache)
        _value_cache[key] = hit
    if hit is _DOMAIN_ERROR:
        raise DomainError(f"{inv.id} undefined on graph of order {g.order}")
    return hit


def _search_memo(kind, inv, g, policy, theta=None):
    """Key for memoizing search results; max_universe is excluded because the
    budget is checked before the cache is consulted, so an overrun raises no
    matter what earlier, looser calls have stored."""
    return (kind, g, inv.id, policy.vertex_range, policy.on_domain_error, theta)


def clear_caches():
    from .invariants import clear_monotone_cache

    _value_cache.clear()
    _search_cache.clear()
    clear_monotone_cache()


def _check_budget(universe_bits: int, policy: SearchPolicy):
    if universe_bits >= policy.max_universe.bit_length() and (
        1 << universe_bits
    ) > policy.max_universe:
        raise BudgetError(universe_bits, policy.max_universe)


def _changed(inv: Invariant, base, sub: Graph, policy: SearchPolicy) -> bool:
    try:
        return _cached_raw(inv, sub) != base
    except DomainError:
        return policy.on_domain_error == CHANGED


def _raw_below(value, theta: ExtRational) -> bool:
    """value < theta with value raw (int/Fraction/inf) and theta extended."""
    if value == RAW_INF:
        return False
    if theta.is_infinite:
        return True
    return value < theta.as_fraction()


# ------------------------------------------------------------ vertex side


def vertex_stability(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> StabilityResult:
    """Least |X| with f(g-X) != f(g); X ranges per policy.vertex_range."""
    _check_budget(g.order, policy)
    key = _search_memo("vs", inv, g, policy)
    hit = _search_cache.get(key)
    if hit is not None:
        return hit
    base = _cached_raw(inv, g)
    top = g.order if policy.vertex_range == ALL else g.order - 1
    result = _NO_RESULT
    for k in range(1, top + 1):
        found = None
        for xs in combinations(range(g.order), k):
            if _changed(inv, base, g.delete_vertices(xs), policy):
                found = StabilityResult(k, xs)
                break
        if found is not None:
            result = found
            break
    if len(_search_cache) >= _SEARCH_CACHE_CAP:
        _evict(_search_cache)
    _search_cache[key] = result
    return result


def threshold_vertex_stability(
    g: Graph,
    inv: Invariant,
    theta: ExtRational,
    policy: SearchPolicy = DEFAULT_POLICY,
) -> StabilityResult:
    """Least |X| with f(g-X) < theta. A deletion where f is undefined never
    satisfies the strict inequality."""
    if theta <= inv.value_floor:
        return _NO_RESULT
    _check_budget(g.order, policy)
    key = _search_memo("tvs", inv, g, policy, theta)
    hit = _search_cache.get(key)
    if hit is not None:
        return hit
    _cached_raw(inv, g)  # surface a domain error on the base graph
    top = g.order if policy.vertex_range == ALL else g.order - 1
    result = _NO_RESULT
    for k in range(0, top + 1):
        found = None
        for xs in combinations(range(g.order), k):
            try:
                val = _cached_raw(inv, g.delete_vertices(xs))
            except DomainError:
                continue
            if _raw_below(val, theta):
                found = StabilityResult(k, xs)
                break
        if found is not None:
            result = found
            break
    if len(_search_cache) >= _SEARCH_CACHE_CAP:
        _evict(_search_cache)
    _search_cache[key] = result
    return result


# ------------------------------------------------------------- edge side


class _EdgeContext:
    """Per-graph scaffolding for fast edge-subset evaluation."""

    __slots__ = ("g", "edges", "incidence", "cycles")

    def __init__(self, g: Graph):
        self.g = g
        self.edges = g.edge_list
        inc = [0] * g.order
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        self.incidence = tuple(inc)
        self.cycles = None  # built on demand for girth

    def cycle_list(self):
        if self.cycles is None:
            self.cycles = _enumerate_cycles(self.g)
        return self.cycles


def _enumerate_cycles(g: Graph) -> list[tuple[int, int]]:
    """All simple cycles as (length, edge-index mask), sorted by length.

    Each cycle is generated from its smallest vertex; the two traversal
    directions collapse in the mask set.
    """
    eindex = {}
    for i, e in enumerate(g.edge_list):
        eindex[e] = i
    adj = g.adjacency
    found: set[tuple[int, int]] = set()
    for s in range(g.order):
        start_bit = 1 << s
        stack = [(s, start_bit, 0, 0)]  # vertex, visited mask, edge mask, depth
        while stack:
            v, visited, emask, depth = stack.pop()
            mask = adj[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                key = (v, u) if v < u else (u, v)
                ei = eindex[key]
                if emask & (1 << ei):
                    continue
                if u == s:
                    if depth >= 2:
                        found.add((depth + 1, emask | (1 << ei)))
                elif u > s and not (visited & (1 << u)):
                    stack.append((u, visited | (1 << u), emask | (1 << ei), depth + 1))
    return sorted(found)


def _fast_edge_value(inv: Invariant, ctx: _EdgeContext, kept: int):
    """Raw value of (V, kept edges) without building a Graph, where cheap.
    Returns NotImplemented when the invariant has no fast path."""
    iid = inv.id
    if iid == "girth":
        for length, cmask in ctx.cycle_list():
            if cmask & ~kept == 0:
                return length
        return RAW_INF
    if iid in ("min_degree", "max_degree"):
        degs = [bin(inc & kept).count("1") for inc in ctx.incidence]
        if not degs:
            return RAW_INF if iid == "min_degree" else 0
        return min(degs) if iid == "min_degree" else max(degs)
    if iid == "min_component_order":
        n = ctx.g.order
        if n == 0:
            return RAW_INF
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        mask = kept
        while mask:
            low = mask & -mask
            i = low.bit_length() - 1
            mask ^= low
            u, v = ctx.edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        sizes: dict[int, int] = {}
        for v in range(n):
            r = find(v)
            sizes[r] = sizes.get(r, 0) + 1
        return min(sizes.values())
    return NotImplemented


def _edge_value(inv: Invariant, ctx: _EdgeContext, kept: int, policy: SearchPolicy):
    """Raw value on the spanning subgraph with the kept edge set.
    Raises DomainError for partial invariants."""
    fast = _fast_edge_value(inv, ctx, kept)
    if fast is not NotImplemented:
        return fast
    sub = Graph(
        ctx.g.order,
        frozenset(ctx.edges[i] for i in range(len(ctx.edges)) if (kept >> i) & 1),
    )
    return _cached_raw(inv, sub)


def _edge_table(inv: Invariant, ctx: _EdgeContext) -> Optional[np.ndarray]:
    """Full raw-value table over all 2^m kept-edge masks, or None."""
    if inv.id not in _TABLE_INVARIANTS:
        return None
    m = len(ctx.edges)
    n = ctx.g.order
    size = 1 << m
    if inv.id in ("min_degree", "max_degree"):
        inc = np.zeros((m, n), dtype=np.int16)
        for i, (u, v) in enumerate(ctx.edges):
            inc[i, u] = 1
            inc[i, v] = 1
        out = np.empty(size, dtype=np.int64)
        shifts = np.arange(m, dtype=np.int64)
        block = 1 << 14
        for lo in range(0, size, block):
            masks = np.arange(lo, min(lo + block, size), dtype=np.int64)[:, None]
            bits = ((masks >> shifts) & 1).astype(np.int16)
            degs = bits @ inc
            out[lo : lo + block] = (
                degs.min(axis=1) if inv.id == "min_degree" else degs.max(axis=1)
            )
        return out
    # min_component_order: merge components mask by mask, splitting on the
    # lowest set edge bit; rows for masks with lowest bit e derive from rows
    # whose bits all sit above e, so iterate e downward.
    comps = np.empty((size, n), dtype=np.uint8)
    comps[0] = np.arange(n, dtype=np.uint8)
    for e in range(m - 1, -1, -1):
        u, v = ctx.edges[e]
        highs = np.arange(1 << (m - e - 1), dtype=np.int64) << (e + 1)
        cur = highs | (1 << e)
        rows = comps[highs]
        cu = rows[:, u][:, None]
        cv = rows[:, v][:, None]
        comps[cur] = np.where(rows == cu, cv, rows)
    out = np.empty(size, dtype=np.int64)
    block = 1 << 12
    for lo in range(0, size, block):
        rows = comps[lo : lo + block]
        eq = rows[:, :, None] == rows[:, None, :]
        out[lo : lo + block] = eq.sum(axis=2, dtype=np.int16).min(axis=1)
    return out


def _popcounts(size: int, m: int) -> np.ndarray:
    x = np.arange(size, dtype=np.uint64)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((x * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def edge_stability(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> StabilityResult:
    """Least |Y| over edge subsets with f(g-Y) != f(g); infinity on edgeless g."""
    _check_budget(g.size, policy)
    key = _search_memo("es", inv, g, policy)
    hit = _search_cache.get(key)
    if hit is not None:
        return hit
    result = _edge_stability_search(g, inv, policy)
    if len(_search_cache) >= _SEARCH_CACHE_CAP:
        _evict(_search_cache)
    _search_cache[key] = result
    return result


def _edge_stability_search(g, inv, policy) -> StabilityResult:
    m = g.size
    base = _cached_raw(inv, g)
    if m == 0:
        return _NO_RESULT
    ctx = _EdgeContext(g)
    full = (1 << m) - 1
    if (1 << m) >= _TABLE_MIN_SUBSETS:
        table = _edge_table(inv, ctx)
        if table is not None:
            changed = table != base
            if not changed.any():
                return _NO_RESULT
            kept_sizes = _popcounts(1 << m, m)
            kmin = int(m - kept_sizes[changed].max())
            return _edge_witness_at(inv, ctx, base, kmin, policy)
    for k in range(1, m + 1):
        res = _edge_try_size(inv, ctx, base, k, policy, full)
        if res is not None:
            return res
    return _NO_RESULT


def _edge_try_size(inv, ctx, base, k, policy, full) -> Optional[StabilityResult]:
    for combo in combinations(range(len(ctx.edges)), k):
        drop = 0
        for i in combo:
            drop |= 1 << i
        try:
            val = _edge_value(inv, ctx, full ^ drop, policy)
            hit = val != base
        except DomainError:
            hit = policy.on_domain_error == CHANGED
        if hit:
            return StabilityResult(k, tuple(ctx.edges[i] for i in combo))
    return None


def _edge_witness_at(inv, ctx, base, k, policy) -> StabilityResult:
    full = (1 << len(ctx.edges)) - 1
    res = _edge_try_size(inv, ctx, base, k, policy, full)
    if res is None:
        raise RuntimeError("table promised a witness size but none was found")
    return res


def threshold_edge_stability(
    g: Graph,
    inv: Invariant,
    theta: ExtRational,
    policy: SearchPolicy = DEFAULT_POLICY,
) -> StabilityResult:
    """Least |Y| with f(g-Y) < theta."""
    if theta <= inv.value_floor:
        return _NO_RESULT
    _check_budget(g.size, policy)
    key = _search_memo("tes", inv, g, policy, theta)
    hit = _search_cache.get(key)
    if hit is not None:
        return hit
    result = _threshold_edge_search(g, inv, theta, policy)
    if len(_search_cache) >= _SEARCH_CACHE_CAP:
        _evict(_search_cache)
    _search_cache[key] = result
    return result


def _threshold_edge_search(g, inv, theta, policy) -> StabilityResult:
    m = g.size
    _cached_raw(inv, g)
    ctx = _EdgeContext(g)
    full = (1 << m) - 1
    if (1 << m) >= _TABLE_MIN_SUBSETS:
        table = _edge_table(inv, ctx)
        if table is not None:
            frac = None if theta.is_infinite else theta.as_fraction()
            below = (
                np.ones(1 << m, dtype=bool)
                if frac is None
                else table < float(frac) if frac.denominator > 1 else table < int(frac)
            )
            if not below.any():
                return _NO_RESULT
            kept_sizes = _popcounts(1 << m, m)
            kmin = int(m - kept_sizes[below].max())
            for combo in combinations(range(m), kmin):
                drop = 0
                for i in combo:
                    drop |= 1 << i
                try:
                    val = _edge_value(inv, ctx, full ^ drop, policy)
                except DomainError:
                    continue
                if _raw_below(val, theta):
                    return StabilityResult(kmin, tuple(ctx.edges[i] for i in combo))
            raise RuntimeError("table promised a threshold size but none was found")
    for k in range(0, m + 1):
        for combo in combinations(range(m), k):
            drop = 0
            for i in combo:
                drop |= 1 << i
            try:
                val = _edge_value(inv, ctx, full ^ drop, policy)
            except DomainError:
                continue
            if _raw_below(val, theta):
                return StabilityResult(k, tuple(ctx.edges[i] for i in combo))
    return _NO_RESULT


def covering_number(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> int:
    """Least number of edges meeting every nonempty spanning subgraph that
    keeps f at f(g); 0 when no such subgraph exists."""
    _check_budget(g.size, policy)
    key = _search_memo("cov", inv, g, policy)
    hit = _search_cache.get(key)
    if hit is not None:
        return hit
    result = _covering_search(g, inv, policy)
    if len(_search_cache) >= _SEARCH_CACHE_CAP:
        _evict(_search_cache)
    _search_cache[key] = result
    return result


def _covering_search(g: Graph, inv: Invariant, policy: SearchPolicy) -> int:
    m = g.size
    base = _cached_raw(inv, g)
    ctx = _EdgeContext(g)
    table = _edge_table(inv, ctx) if (1 << m) >= _TABLE_MIN_SUBSETS else None
    members = []
    for kept in range(1, 1 << m):
        if table is not None:
            same = table[kept] == base
        else:
            try:
                same = _edge_value(inv, ctx, kept, policy) == base
            except DomainError:
                same = False
        if same:
            members.append(kept)
    if not members:
        return 0
    for k in range(1, m + 1):
        for combo in combinations(range(m), k):
            emask = 0
            for i in combo:
                emask |= 1 << i
            if all(mem & emask for mem in members):
                return k
    raise RuntimeError("full edge set always covers; unreachable")
