"""Test corpora: exhaustive labeled enumeration, seeded random graphs, and
disjoint unions of connected pairs.

Exhaustive enumeration is labeled (no isomorphism dedup) and emits graphs in
ascending graph6 order, which for a fixed order is simply ascending order of
the upper-triangle bit vector. The hard cap keeps 2^(n(n-1)/2) within desk
scale.
"""

from __future__ import annotations

import random
from typing import Iterator

from .graphs import Graph, disjoint_union, is_connected

EXHAUSTIVE_MAX_ORDER = 8


def _column_major_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def exhaustive(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labeled graphs on n vertices, ascending graph6 order."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > EXHAUSTIVE_MAX_ORDER:
        raise ValueError(
            f"cap exceeded: exhaustive enumeration is limited to order "
            f"{EXHAUSTIVE_MAX_ORDER}, got {n}"
        )
    pairs = _column_major_pairs(n)
    np = len(pairs)
    for mask in range(1 << np):
        edges = frozenset(
            pairs[p] for p in range(np) if (mask >> (np - 1 - p)) & 1
        )
        yield Graph(n, edges)


def exhaustive_up_to(n_max: int) -> Iterator[Graph]:
    """Exhaustive corpora for every order 1..n_max, concatenated."""
    for n in range(1, n_max + 1):
        yield from exhaustive(n)


def random_graphs(count: int, n_max: int, seed: int) -> Iterator[Graph]:
    """Reproducible G(n, 1/2) samples with order drawn uniformly from
    1..n_max. The whole sequence is a pure function of the seed."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, n_max)
        edges = frozenset(
            (i, j)
            for j in range(1, n)
            for i in range(j)
            if rng.getrandbits(1)
        )
        yield Graph(n, edges)


def connected_catalog(max_order: int) -> list[Graph]:
    """Every connected labeled graph of order 1..max_order, sorted by
    (order, graph6); within one order ascending bit-vector order is already
    ascending graph6 order."""
    return [g for n in range(1, max_order + 1) for g in exhaustive(n) if is_connected(g)]


def union_pairs(n_max: int) -> Iterator[Graph]:
    """Disjoint unions A | B over catalog pairs with index i <= j and
    |A| + |B| <= n_max, in catalog order."""
    catalog = connected_catalog(n_max - 1)
    for i, a in enumerate(catalog):
        if a.order + 1 > n_max:
            break
        for j in range(i, len(catalog)):
            b = catalog[j]
            if a.order + b.order > n_max:
                break
            yield disjoint_union([a, b])


def build(mode: str, n_max: int, count: int = 50, seed: int = 0) -> Iterator[Graph]:
    if mode == "exhaustive":
        return exhaustive_up_to(n_max)
    if mode == "random":
        return random_graphs(count, n_max, seed)
    if mode == "union":
        return union_pairs(n_max)
    raise ValueError(f"unknown corpus mode {mode!r}")
