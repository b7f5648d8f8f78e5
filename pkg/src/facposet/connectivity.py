"""Chain graphs and (total) chain-connectivity."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckFailed
from .interval import (
    Chain,
    DEFAULT_CHAIN_BUDGET,
    LabeledInterval,
    maximal_chains,
    subinterval,
)
from .hurwitz import _components


@dataclass
class ChainGraph:
    chains: list[Chain]
    edges: set[tuple[int, int]]

    def components(self) -> list[list[int]]:
        return _components(len(self.chains), self.edges)


def chain_graph(L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET) -> ChainGraph:
    """Two maximal chains are adjacent iff they differ in exactly one element."""
    chains = maximal_chains(L, budget=budget)
    edges: set[tuple[int, int]] = set()
    n = L.rank
    for pos in range(1, n):
        buckets: dict[tuple[int, ...], list[int]] = {}
        for k, c in enumerate(chains):
            buckets.setdefault(c[:pos] + c[pos + 1 :], []).append(k)
        for group in buckets.values():
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    edges.add((group[a], group[b]))
    return ChainGraph(chains=chains, edges=edges)


def is_chain_connected(L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET) -> bool:
    return len(chain_graph(L, budget=budget).components()) == 1


def _proper_part_connected(L: LabeledInterval, x: int, y: int) -> bool:
    """Connectivity of the Hasse diagram strictly between x and y."""
    above = L.descendants()
    interior = sorted(
        z
        for z in above[x]
        if z != x and z != y and L.leq(z, y)
    )
    if not interior:
        return True
    inside = set(interior)
    adj = {z: [] for z in interior}
    for u, v, _ in L.edges:
        if u in inside and v in inside:
            adj[u].append(v)
            adj[v].append(u)
    seen = {interior[0]}
    stack = [interior[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(interior)


def is_totally_chain_connected(
    L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET
) -> tuple[bool, tuple[int, int] | None]:
    """Every interval chain-connected; witness = least failing (x, y).

    Cross-checked against the proper-part criterion: a bounded graded poset
    is totally chain-connected iff the proper part of every interval of rank
    at least 3 is connected.  Intervals of rank <= 2 are always connected.
    """
    witness = None
    for x, y in L.intervals(min_diff=3):
        sub = subinterval(L, x, y)
        if len(chain_graph(sub, budget=budget).components()) != 1:
            witness = (x, y)
            break

    by_proper = all(
        _proper_part_connected(L, x, y) for x, y in L.intervals(min_diff=3)
    )
    if by_proper != (witness is None):
        raise InternalCheckFailed(
            "total chain-connectivity: chain-graph and proper-part methods disagree"
        )
    return witness is None, witness


def chain_graph_dot(L: LabeledInterval, graph: ChainGraph) -> str:
    lines = ["graph chains {"]
    for k, c in enumerate(graph.chains):
        try:
            from .interval import chain_word

            label = "".join(L.word_names(chain_word(L, c)))
        except Exception:
            label = "<".join(L.chain_names(c))
        lines.append(f'  c{k} [label="{label}"];')
    for a, b in sorted(graph.edges):
        lines.append(f"  c{a} -- c{b};")
    lines.append("}")
    return "\n".join(lines)
