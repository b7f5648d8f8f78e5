"""The cycle graph, exact minimum feedback arc sets, and reduced graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    ExtensionBudgetExceeded,
    InternalCheckFailed,
    InvalidInterval,
    NotCompatible,
    SearchBudgetExceeded,
)
from .interval import LabeledInterval
from .orders import GeneratorOrder, _positions, is_compatible

DEFAULT_FAS_BUDGET = 2**24
DEFAULT_EXTENSION_BUDGET = 100_000

Edge = tuple[int, int]


@dataclass
class CycleGraph:
    """Directed labeled graph on the alphabet; labels are rank-2 nodes."""

    interval: LabeledInterval
    edges: list[tuple[int, int, int]]  # (a, b, rank-2 node), loops included
    cycles_by_label: dict[int, tuple[tuple[int, ...], ...]]

    @property
    def vertices(self) -> range:
        return range(len(self.interval.alphabet))

    def loops(self) -> list[tuple[int, int, int]]:
        return [(a, b, g) for a, b, g in self.edges if a == b]


def build_cycle_graph(L: LabeledInterval) -> CycleGraph:
    """One directed edge a -> b labeled g per length-2 word (a, b) of g."""
    L.require_labeled()
    edges: list[tuple[int, int, int]] = []
    seen: dict[Edge, int] = {}
    cycles_by_label: dict[int, tuple[tuple[int, ...], ...]] = {}
    for g in sorted(L.nodes_at_rank(2)):
        cycles = L.rank2_data(L.bottom, g).cycles
        cycles_by_label[g] = cycles
        for cyc in cycles:
            k = len(cyc)
            for idx in range(k):
                a, b = cyc[idx], cyc[(idx + 1) % k]
                if (a, b) in seen:
                    raise InvalidInterval(
                        f"duplicate directed edge {L.alphabet[a]}->{L.alphabet[b]}"
                    )
                seen[(a, b)] = g
                edges.append((a, b, g))
    return CycleGraph(interval=L, edges=sorted(edges), cycles_by_label=cycles_by_label)


# -- exact minimum feedback arc set ------------------------------------------


def _find_shortest_cycle(n: int, adj: dict[int, list[int]]) -> Optional[list[Edge]]:
    """Shortest directed cycle as an edge list, or None if acyclic."""
    best: Optional[list[int]] = None
    for start in range(n):
        # BFS for a path back to start
        prev: dict[int, Optional[int]] = {start: None}
        frontier = [start]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for v in adj.get(u, ()):
                    if v == start:
                        found = u
                        break
                    if v not in prev:
                        prev[v] = u
                        nxt.append(v)
                if found is not None:
                    break
            frontier = nxt
        if found is not None:
            path = []
            u = found
            while u is not None:
                path.append(u)
                u = prev[u]
            path.reverse()  # start ... found
            if best is None or len(path) < len(best):
                best = path
                if len(best) <= 2:
                    break
    if best is None:
        return None
    return [(best[i], best[(i + 1) % len(best)]) for i in range(len(best))]


def _greedy_cycle_packing(n: int, edges: set[Edge]) -> int:
    """Count of edge-disjoint cycles found greedily (a valid lower bound)."""
    remaining = set(edges)
    count = 0
    while True:
        adj: dict[int, list[int]] = {}
        for a, b in remaining:
            adj.setdefault(a, []).append(b)
        for v in adj.values():
            v.sort()
        cyc = _find_shortest_cycle(n, adj)
        if cyc is None:
            return count
        count += 1
        remaining -= set(cyc)


def _is_acyclic(n: int, edges: set[Edge]) -> bool:
    indeg = [0] * n
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        indeg[b] += 1
        adj.setdefault(a, []).append(b)
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in adj.get(v, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def min_feedback_arc_set(
    gamma: CycleGraph, budget: int = DEFAULT_FAS_BUDGET
) -> tuple[int, list[Edge]]:
    """Exact minimum via branch and bound; loops are always removed.

    Lower bound: label cycles are pairwise edge-disjoint, topped up with
    greedily packed extra cycles.  The certificate is re-verified acyclic.
    """
    n = len(gamma.interval.alphabet)
    loops = [(a, b) for a, b, _ in gamma.edges if a == b]
    simple = {(a, b) for a, b, _ in gamma.edges if a != b}
    label_cycles = [
        tuple(cyc)
        for cycles in gamma.cycles_by_label.values()
        for cyc in cycles
        if len(cyc) >= 2
    ]

    best_size = len(simple) + 1
    best_removed: list[Edge] = []
    explored = 0

    def lower_bound(removed: set[Edge]) -> int:
        used: set[Edge] = set()
        count = 0
        for cyc in label_cycles:
            k = len(cyc)
            cedges = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
            if all(e not in removed for e in cedges):
                count += 1
                used.update(cedges)
        count += _greedy_cycle_packing(n, simple - removed - used)
        return count

    def rec(removed: set[Edge]) -> None:
        nonlocal best_size, best_removed, explored
        explored += 1
        if explored > budget:
            raise SearchBudgetExceeded(f"feedback arc search exceeded {budget} nodes")
        if len(removed) + lower_bound(removed) >= best_size:
            return
        adj: dict[int, list[int]] = {}
        for a, b in simple - removed:
            adj.setdefault(a, []).append(b)
        for v in adj.values():
            v.sort()
        cyc = _find_shortest_cycle(n, adj)
        if cyc is None:
            if len(removed) < best_size:
                best_size = len(removed)
                best_removed = sorted(removed)
            return
        for edge in cyc:
            rec(removed | {edge})

    rec(set())
    certificate = sorted(loops) + best_removed
    if not _is_acyclic(n, simple - set(best_removed)):
        raise InternalCheckFailed("feedback arc certificate leaves a cycle")
    return len(loops) + best_size, certificate


# -- reduced cycle graph ----------------------------------------------------------


@dataclass
class ReducedCycleGraph:
    interval: LabeledInterval
    order: GeneratorOrder
    edges: list[Edge]  # loop-free, one edge removed per label

    @property
    def vertices(self) -> range:
        return range(len(self.interval.alphabet))

    def reach(self) -> list[set[int]]:
        adj: dict[int, list[int]] = {}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
        out = []
        for start in self.vertices:
            seen = {start}
            stack = [start]
            while stack:
                for w in adj.get(stack.pop(), ()):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(seen)
        return out


def reduced_cycle_graph(L: LabeledInterval, order: GeneratorOrder) -> ReducedCycleGraph:
    """Drop the rising edge of every label (and with it all loops)."""
    compatible, witness = is_compatible(L, order)
    if not compatible:
        g, rising = witness
        raise NotCompatible(
            f"order is not compatible: {L.names[g]!r} has {len(rising)} rising words"
        )
    gamma = build_cycle_graph(L)
    pos = _positions(order)
    edges: list[Edge] = []
    for g, cycles in gamma.cycles_by_label.items():
        (cyc,) = cycles  # compatible implies a single cycle per label
        k = len(cyc)
        cedges = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
        rising = [(a, b) for a, b in cedges if pos[a] <= pos[b]]
        if len(rising) != 1:
            raise InternalCheckFailed(
                f"label {L.names[g]!r} has {len(rising)} rising edges under a compatible order"
            )
        edges.extend(e for e in cedges if e != rising[0])
    if not _is_acyclic(len(L.alphabet), set(edges)):
        raise InternalCheckFailed("reduced cycle graph of a compatible order has a cycle")
    return ReducedCycleGraph(interval=L, order=order, edges=sorted(edges))


def linear_extensions(
    rg: ReducedCycleGraph, budget: int = DEFAULT_EXTENSION_BUDGET
) -> list[GeneratorOrder]:
    """All linear extensions of the induced order, smallest element first.

    The induced order puts a below b when b reaches a, so an element may be
    placed once everything it reaches is placed.
    """
    n = len(rg.interval.alphabet)
    reach = rg.reach()
    strictly_below = [reach[v] - {v} for v in range(n)]
    out: list[GeneratorOrder] = []
    placed: list[int] = []
    placed_set: set[int] = set()

    def rec() -> None:
        if len(out) > budget:
            raise ExtensionBudgetExceeded(f"more than {budget} linear extensions")
        if len(placed) == n:
            out.append(tuple(placed))
            return
        for v in range(n):
            if v in placed_set or not strictly_below[v] <= placed_set:
                continue
            placed.append(v)
            placed_set.add(v)
            rec()
            placed.pop()
            placed_set.discard(v)

    rec()
    return out


def analyze_reduced(
    rg: ReducedCycleGraph, extension_budget: int = DEFAULT_EXTENSION_BUDGET
) -> dict:
    """Linearity, sink structure and linear extensions of the induced order."""
    n = len(rg.interval.alphabet)
    reach = rg.reach()
    comparable = all(
        (b in reach[a]) or (a in reach[b])
        for a in range(n)
        for b in range(a + 1, n)
    )

    # independent check: a DAG is a total order iff the topological sort is forced
    edges = set(rg.edges)
    indeg = [0] * n
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        indeg[b] += 1
        adj.setdefault(a, []).append(b)
    avail = [v for v in range(n) if indeg[v] == 0]
    forced = True
    removed = 0
    while avail:
        if len(avail) > 1:
            forced = False
            break
        v = avail.pop()
        removed += 1
        for w in adj.get(v, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                avail.append(w)
    forced = forced and removed == n
    if forced != comparable:
        raise InternalCheckFailed("linearity tests disagree on the reduced graph")

    out_deg = [0] * n
    for a, _ in edges:
        out_deg[a] += 1
    sinks = [v for v in range(n) if out_deg[v] == 0]

    try:
        extensions = linear_extensions(rg, budget=extension_budget)
        truncated = False
    except ExtensionBudgetExceeded:
        extensions = []
        truncated = True
    return {
        "induced_order_is_linear": comparable,
        "unique_sink": len(sinks) == 1,
        "sinks": [rg.interval.alphabet[v] for v in sorted(sinks)],
        "linear_extensions": extensions,
        "extensions_truncated": truncated,
    }


def cycle_graph_dot(gamma: CycleGraph) -> str:
    L = gamma.interval
    palette = [
        "blue", "red", "green", "orange", "purple", "brown",
        "cyan", "magenta", "gray", "olive", "darkgreen", "navy",
    ]
    labels = sorted(gamma.cycles_by_label)
    color = {g: palette[i % len(palette)] for i, g in enumerate(labels)}
    lines = ["digraph cycles {"]
    for v in gamma.vertices:
        lines.append(f'  v{v} [label="{L.alphabet[v]}"];')
    for a, b, g in gamma.edges:
        lines.append(
            f'  v{a} -> v{b} [color={color[g]}, label="{L.names[g]}"];'
        )
    lines.append("}")
    return "\n".join(lines)


def reduced_graph_dot(rg: ReducedCycleGraph) -> str:
    L = rg.interval
    lines = ["digraph reduced {"]
    for v in rg.vertices:
        lines.append(f'  v{v} [label="{L.alphabet[v]}"];')
    for a, b in rg.edges:
        lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines)
