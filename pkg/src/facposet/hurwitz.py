"""Braid-group moves on maximal chains, the Hurwitz graph, and orbits.

Moves are computed from the labeled diagram alone: a move at position i
only rewires the rank-2 sub-interval between chain[i-1] and chain[i+1],
so no group oracle is needed and transcribed fixtures support the full
action.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoSuchEdge
from .interval import (
    Chain,
    DEFAULT_CHAIN_BUDGET,
    LabeledInterval,
    maximal_chains,
)


@dataclass
class HurwitzGraph:
    chains: list[Chain]
    edges: set[tuple[int, int]]
    loops: list[tuple[int, int]]  # (chain index, position)

    def components(self) -> list[list[int]]:
        return _components(len(self.chains), self.edges)


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def hurwitz_move(
    L: LabeledInterval, chain: Chain, i: int, inverse: bool = False
) -> Chain:
    """Apply the i-th braid generator (or its inverse) to a maximal chain.

    Positions run 1..rank-1; the move replaces the interior node chain[i]
    within the rank-2 sub-interval [chain[i-1], chain[i+1]].
    """
    n = len(chain) - 1
    if not 1 <= i <= n - 1:
        raise ValueError(f"position {i} out of range 1..{n - 1}")
    data = L.rank2_data(chain[i - 1], chain[i + 1])
    pair = data.pairs.get(chain[i])
    if pair is None:
        raise NoSuchEdge(f"{L.names[chain[i]]!r} is not between its neighbors")
    a, b = pair
    new_mid = data.by_second.get(a) if inverse else data.by_first.get(b)
    if new_mid is None:
        raise NoSuchEdge(
            f"no move target below {L.names[chain[i + 1]]!r}; interval invalid"
        )
    return chain[: i] + (new_mid,) + chain[i + 1 :]


def hurwitz_graph(
    L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET
) -> HurwitzGraph:
    """Vertices: all maximal chains; edges: unordered Hurwitz-move pairs."""
    chains = maximal_chains(L, budget=budget)
    index = {c: k for k, c in enumerate(chains)}
    n = L.rank
    edges: set[tuple[int, int]] = set()
    loops: list[tuple[int, int]] = []
    for k, c in enumerate(chains):
        for i in range(1, n):
            c2 = hurwitz_move(L, c, i)
            if c2 == c:
                loops.append((k, i))
            else:
                j = index[c2]
                edges.add((min(k, j), max(k, j)))
    return HurwitzGraph(chains=chains, edges=edges, loops=loops)


def hurwitz_orbits(
    L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET
) -> list[list[Chain]]:
    graph = hurwitz_graph(L, budget=budget)
    return [
        [graph.chains[i] for i in comp] for comp in graph.components()
    ]


def is_hurwitz_connected(L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET) -> bool:
    return len(hurwitz_orbits(L, budget=budget)) == 1


def rank2_label_cycles(L: LabeledInterval, g: int) -> list[tuple[int, ...]]:
    """The orbit cycles of the length-2 element g, as label-id sequences."""
    if L.ranks[g] != 2:
        raise ValueError(f"{L.names[g]!r} does not have rank 2")
    return list(L.rank2_data(L.bottom, g).cycles)


def is_locally_hurwitz_connected(L: LabeledInterval) -> tuple[bool, int | None]:
    """True iff every length-2 element has a single orbit; witness otherwise."""
    L.require_labeled()
    for g in sorted(L.nodes_at_rank(2)):
        if len(L.rank2_data(L.bottom, g).cycles) > 1:
            return False, g
    return True, None
