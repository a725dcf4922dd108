"""Simple labeled graphs with exact, label-sensitive semantics.

Vertices of an order-n graph are 0..n-1. Equality compares order and edge
set literally; nothing in the package tests isomorphism. The order-0 graph
(the null graph) is a first-class value: deletions may produce it and
invariants define conventions on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop edge {u}-{v} not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..order-1."""

    order: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < v < self.order):
                raise ValueError(f"edge ({u},{v}) out of range for order {self.order}")

    @staticmethod
    def build(order: int, edges: Iterable[Sequence[int]] = ()) -> "Graph":
        """Construct from any iterable of endpoint pairs (either orientation)."""
        return Graph(order, frozenset(_normalize_edge(u, v) for u, v in edges))

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges sorted ascending; the canonical enumeration order."""
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex."""
        adj = [0] * self.order
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def size(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def degrees(self) -> tuple[int, ...]:
        return tuple(bin(m).count("1") for m in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def vertices(self) -> range:
        return range(self.order)

    def is_null(self) -> bool:
        return self.order == 0

    def is_empty(self) -> bool:
        """No edges (the null graph is vacuously empty)."""
        return not self.edges

    def is_complete(self) -> bool:
        return len(self.edges) == self.order * (self.order - 1) // 2

    def delete_vertices(self, xs: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining vertices, relabeled 0..k-1
        preserving the original ascending order."""
        drop = set(xs)
        for x in drop:
            if not (0 <= x < self.order):
                raise ValueError(f"vertex {x} out of range")
        keep = [v for v in range(self.order) if v not in drop]
        relabel = {v: i for i, v in enumerate(keep)}
        edges = frozenset(
            (relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel
        )
        return Graph(len(keep), edges)

    def delete_edges(self, ys: Iterable[Sequence[int]]) -> "Graph":
        """Spanning subgraph with the given edges removed."""
        drop = set()
        for u, v in ys:
            e = _normalize_edge(u, v)
            if e not in self.edges:
                raise ValueError(f"edge {e} not in graph")
            drop.add(e)
        return Graph(self.order, self.edges - drop)

    def subgraph_with_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        """Spanning subgraph keeping exactly the given edges."""
        kept = frozenset(_normalize_edge(u, v) for u, v in edges)
        extra = kept - self.edges
        if extra:
            raise ValueError(f"edges {sorted(extra)} not in graph")
        return Graph(self.order, kept)


@dataclass(frozen=True)
class ComponentSplit:
    """Connected components as standalone graphs plus their embeddings.

    parts[i] is the i-th component relabeled 0..k-1; embeddings[i][j] is the
    original label of its vertex j. Parts are ordered by smallest original
    label and each embedding is ascending, so the split is deterministic.
    """

    parts: tuple[Graph, ...]
    embeddings: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.parts)


def components(g: Graph) -> ComponentSplit:
    """Split into connected components, ordered by smallest original label."""
    seen = [False] * g.order
    parts: list[Graph] = []
    embeddings: list[tuple[int, ...]] = []
    for root in range(g.order):
        if seen[root]:
            continue
        stack = [root]
        seen[root] = True
        bag = [root]
        while stack:
            v = stack.pop()
            mask = g.adjacency[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if not seen[u]:
                    seen[u] = True
                    bag.append(u)
                    stack.append(u)
        bag.sort()
        relabel = {v: i for i, v in enumerate(bag)}
        edges = frozenset(
            (relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel
        )
        parts.append(Graph(len(bag), edges))
        embeddings.append(tuple(bag))
    return ComponentSplit(tuple(parts), tuple(embeddings))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    """Disjoint union; part i's labels are offset by the total order before it."""
    order = 0
    edges: list[Edge] = []
    for part in parts:
        edges.extend((u + order, v + order) for u, v in part.edges)
        order += part.order
    return Graph(order, frozenset(edges))


def open_neighborhood(g: Graph, ws: Iterable[int]) -> set[int]:
    """Union of neighborhoods of ws, minus ws itself."""
    ws = set(ws)
    mask = 0
    for w in ws:
        if not (0 <= w < g.order):
            raise ValueError(f"vertex {w} out of range")
        mask |= g.adjacency[w]
    out = set()
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        mask ^= low
        if v not in ws:
            out.add(v)
    return out


def boundary_edges(g: Graph, ws: Iterable[int]) -> frozenset[Edge]:
    """Edges with exactly one endpoint in ws."""
    ws = set(ws)
    for w in ws:
        if not (0 <= w < g.order):
            raise ValueError(f"vertex {w} out of range")
    return frozenset(e for e in g.edges if (e[0] in ws) != (e[1] in ws))


def induced_subgraph(g: Graph, ws: Iterable[int]) -> Graph:
    """Induced subgraph on ws, relabeled ascending."""
    ws = set(ws)
    return g.delete_vertices(v for v in range(g.order) if v not in ws)


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        return False
    return len(components(g).parts) == 1


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges.append((0, n - 1))
    return Graph(n, frozenset(edges))
