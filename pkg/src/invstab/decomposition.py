"""Exact stability formulas for disjoint unions.

Each rule recovers a stability number of a disconnected graph from
per-component data (component values, stabilities, threshold stabilities)
without searching subsets of the whole vertex or edge set. Every rule
guards its own hypotheses and raises NotApplicable when they fail, so a
caller can try a rule on anything.

Monotonicity hypotheses are checked per component: a registry-level flag
settles the question when it matches, otherwise the component is small
enough to check by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, ComponentSplit, components
from .invariants import (
    DECREASING,
    INCREASING,
    Invariant,
    RAW_INF,
    components_monotone,
)
from .stability import (
    DEFAULT_POLICY,
    INFINITY,
    SearchPolicy,
    StabilityResult,
    _cached_raw,
    edge_stability,
    threshold_edge_stability,
    threshold_vertex_stability,
    vertex_stability,
)
from .values import ExtRational


class NotApplicable(Exception):
    """The rule's hypotheses do not hold for this graph and invariant."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class Decomposition:
    """Formula outcome: the predicted stability number plus the index sets
    that drove the case split (component positions in label order)."""

    value: float  # nonnegative int, or INFINITY
    case: str
    attained: tuple[int, ...]
    unstable: tuple[int, ...]

    def value_json(self):
        return "inf" if self.value == INFINITY else int(self.value)


def _split(g: Graph) -> ComponentSplit:
    sp = components(g)
    if len(sp) == 0:
        raise NotApplicable("null graph has no components")
    if len(sp) == 1:
        raise NotApplicable("graph is connected")
    return sp


def _part_values(inv: Invariant, sp: ComponentSplit) -> list:
    return [_cached_raw(inv, part) for part in sp.parts]


def _require_monotone(inv, sp, direction, scope, policy):
    if not components_monotone(
        inv, sp, direction, scope=scope, max_universe=policy.max_universe
    ):
        raise NotApplicable(f"components not {direction} under {scope} subgraphs")


def _min_or_inf(items) -> float:
    items = list(items)
    return min(items) if items else INFINITY


# ----------------------------------------------------------- vertex rules


def vs_union_multiplicative_nonzero_nonone(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Multiplicative invariant, every component value outside {0, 1}:
    the cheapest single component decides."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    sp = _split(g)
    vals = _part_values(inv, sp)
    if any(v in (0, 1) for v in vals):
        raise NotApplicable("some component value is 0 or 1")
    best = min(
        min(_vs_value(part, inv, policy), part.order) for part in sp.parts
    )
    return Decomposition(best, "min_over_parts", (), ())


def vs_union_multiplicative_general(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Multiplicative invariant, no further hypotheses; splits on zero
    components and unstable components."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    sp = _split(g)
    vals = _part_values(inv, sp)
    stabilities = [_vs_value(part, inv, policy) for part in sp.parts]
    zero = tuple(i for i, v in enumerate(vals) if v == 0)
    unstable = tuple(i for i, s in enumerate(stabilities) if s == INFINITY)
    if len(unstable) == len(sp):
        return Decomposition(INFINITY, "all_parts_unstable", zero, unstable)
    if zero:
        total = sum(
            min(stabilities[i], sp.parts[i].order) for i in zero
        )
        return Decomposition(total, "zero_parts", zero, unstable)
    candidates = [stabilities[i] for i in range(len(sp)) if i not in unstable]
    candidates += [
        sp.parts[j].order for j in unstable if vals[j] != 1
    ]
    return Decomposition(_min_or_inf(candidates), "no_zero_parts", zero, unstable)


def vs_union_mining_increasing(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Mining invariant, components monotone increasing under induced
    subgraphs: deletions can only lower component values, so the minimum
    either drops below itself or every attaining component is removed."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    sp = _split(g)
    _require_monotone(inv, sp, INCREASING, "induced", policy)
    vals = _part_values(inv, sp)
    total = min(vals)
    attained = tuple(i for i, v in enumerate(vals) if v == total)
    stabilities = [_vs_value(part, inv, policy) for part in sp.parts]
    unstable = tuple(i for i, s in enumerate(stabilities) if s == INFINITY)
    if len(unstable) == len(sp):
        return Decomposition(INFINITY, "all_parts_unstable", attained, unstable)
    theta = _as_ext(total)
    if set(attained) == set(unstable):
        removal = sum(sp.parts[i].order for i in attained)
        drops = [
            _threshold_vs_value(sp.parts[t], inv, theta, policy)
            for t in range(len(sp))
            if t not in attained
        ]
        return Decomposition(
            min([removal] + drops), "minimum_parts_unstable", attained, unstable
        )
    candidates = [
        stabilities[i] for i in attained if i not in unstable
    ]
    candidates += [
        _threshold_vs_value(sp.parts[t], inv, theta, policy)
        for t in range(len(sp))
        if t not in attained and t not in unstable
    ]
    return Decomposition(_min_or_inf(candidates), "mixed", attained, unstable)


def vs_union_mining_decreasing(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Mining invariant, components monotone decreasing under induced
    subgraphs: deletions only raise values, so every attaining component
    must move."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    sp = _split(g)
    _require_monotone(inv, sp, DECREASING, "induced", policy)
    vals = _part_values(inv, sp)
    total = min(vals)
    attained = tuple(i for i, v in enumerate(vals) if v == total)
    stabilities = [_vs_value(part, inv, policy) for part in sp.parts]
    unstable = tuple(i for i, s in enumerate(stabilities) if s == INFINITY)
    if len(unstable) == len(sp):
        return Decomposition(INFINITY, "all_parts_unstable", attained, unstable)
    total_cost = 0
    for i in attained:
        if i in unstable:
            total_cost += sp.parts[i].order
        else:
            total_cost += stabilities[i]
    return Decomposition(total_cost, "raise_minimum", attained, unstable)


# ------------------------------------------------------------- edge rules


def es_union_multiplicative(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Multiplicative invariant with nonzero product: one changed factor
    changes the product, so the cheapest component decides."""
    if not inv.multiplicative:
        raise NotApplicable("invariant is not multiplicative")
    sp = _split(g)
    vals = _part_values(inv, sp)
    if any(v == 0 for v in vals):
        raise NotApplicable("product over components is zero")
    stabilities = [_es_value(part, inv, policy) for part in sp.parts]
    finite = tuple(i for i, s in enumerate(stabilities) if s != INFINITY)
    if not finite:
        return Decomposition(INFINITY, "no_stable_part", finite, ())
    return Decomposition(
        min(stabilities[i] for i in finite), "min_over_parts", finite, ()
    )


def es_union_mining_increasing(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Mining invariant, components monotone increasing under spanning
    subgraphs: edge deletions only lower values."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    sp = _split(g)
    _require_monotone(inv, sp, INCREASING, "spanning", policy)
    vals = _part_values(inv, sp)
    total = min(vals)
    attained = tuple(i for i, v in enumerate(vals) if v == total)
    stabilities = [_es_value(part, inv, policy) for part in sp.parts]
    unstable = tuple(i for i, s in enumerate(stabilities) if s == INFINITY)
    if len(unstable) == len(sp):
        return Decomposition(INFINITY, "all_parts_unstable", attained, unstable)
    theta = _as_ext(total)
    if set(attained) == set(unstable):
        drops = [
            _threshold_es_value(sp.parts[t], inv, theta, policy)
            for t in range(len(sp))
            if t not in attained
        ]
        return Decomposition(
            _min_or_inf(drops), "minimum_parts_unstable", attained, unstable
        )
    candidates = [stabilities[i] for i in attained if i not in unstable]
    candidates += [
        _threshold_es_value(sp.parts[t], inv, theta, policy)
        for t in range(len(sp))
        if t not in attained and t not in unstable
    ]
    return Decomposition(_min_or_inf(candidates), "mixed", attained, unstable)


def es_union_mining_decreasing(
    g: Graph, inv: Invariant, policy: SearchPolicy = DEFAULT_POLICY
) -> Decomposition:
    """Mining invariant, components monotone decreasing under spanning
    subgraphs: every attaining component must be changed."""
    if not inv.mining:
        raise NotApplicable("invariant is not mining")
    sp = _split(g)
    _require_monotone(inv, sp, DECREASING, "spanning", policy)
    vals = _part_values(inv, sp)
    total = min(vals)
    attained = tuple(i for i, v in enumerate(vals) if v == total)
    stabilities = [_es_value(part, inv, policy) for part in sp.parts]
    unstable = tuple(i for i, s in enumerate(stabilities) if s == INFINITY)
    if any(i in unstable for i in attained):
        return Decomposition(INFINITY, "unstable_minimum", attained, unstable)
    return Decomposition(
        sum(stabilities[i] for i in attained), "sum_over_minimum", attained, unstable
    )


# --------------------------------------------------------------- plumbing


def _vs_value(part: Graph, inv: Invariant, policy: SearchPolicy) -> float:
    return vertex_stability(part, inv, policy).value


def _es_value(part: Graph, inv: Invariant, policy: SearchPolicy) -> float:
    return edge_stability(part, inv, policy).value


def _threshold_vs_value(part, inv, theta, policy) -> float:
    return threshold_vertex_stability(part, inv, theta, policy).value


def _threshold_es_value(part, inv, theta, policy) -> float:
    return threshold_edge_stability(part, inv, theta, policy).value


def _as_ext(raw) -> ExtRational:
    return ExtRational(infinite=True) if raw == RAW_INF else ExtRational(raw)


VERTEX_RULES = {
    "multiplicative_nonzero_nonone": vs_union_multiplicative_nonzero_nonone,
    "multiplicative_general": vs_union_multiplicative_general,
    "mining_increasing": vs_union_mining_increasing,
    "mining_decreasing": vs_union_mining_decreasing,
}

EDGE_RULES = {
    "multiplicative": es_union_multiplicative,
    "mining_increasing": es_union_mining_increasing,
    "mining_decreasing": es_union_mining_decreasing,
}
