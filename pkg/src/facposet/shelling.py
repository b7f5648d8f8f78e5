"""Shelling verification, shellings from EL-labelings, and shelling search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InternalCheckFailed,
    NotAPermutationOfChains,
    NotELLabeling,
)
from .interval import (
    Chain,
    DEFAULT_CHAIN_BUDGET,
    LabeledInterval,
    chain_word,
    maximal_chains,
)
from .connectivity import chain_graph, is_totally_chain_connected
from .orders import GeneratorOrder, _positions, is_el_labeling

DEFAULT_SHELLING_BUDGET = 6_000_000
MEMO_CAP = 1 << 23


def is_shelling(
    L: LabeledInterval, chain_order: Sequence[Chain]
) -> tuple[bool, Optional[tuple[Chain, Chain]]]:
    """Check the intersection condition; witness = first violating pair.

    For M before M' there must be an earlier N and an x in M' with
    M cap M' contained in N cap M' = M' minus {x}.
    """
    chains = maximal_chains(L)
    order = [tuple(c) for c in chain_order]
    if sorted(order) != sorted(chains):
        raise NotAPermutationOfChains("chain order must permute the maximal chains")
    sets = [frozenset(c) for c in order]
    for j in range(1, len(order)):
        mj = sets[j]
        removable = set()
        for k in range(j):
            diff = mj - sets[k]
            if len(diff) == 1:
                removable.add(next(iter(diff)))
        for i in range(j):
            if not any(x not in sets[i] for x in removable):
                return False, (order[i], order[j])
    return True, None


def shelling_from_el(L: LabeledInterval, order: GeneratorOrder) -> list[Chain]:
    """Sort chains by their label words; an EL-labeling makes this a shelling."""
    ok, witness = is_el_labeling(L, order)
    if not ok:
        raise NotELLabeling(f"labeling is not EL under this order (witness {witness})")
    pos = _positions(order)
    chains = maximal_chains(L)
    chains.sort(key=lambda c: tuple(pos[a] for a in chain_word(L, c)))
    good, pair = is_shelling(L, chains)
    if not good:
        raise InternalCheckFailed(f"lexicographic order failed the shelling check: {pair}")
    return chains


@dataclass
class ShellingSearchResult:
    status: str  # "shellable" | "not_shellable" | "inconclusive"
    order: Optional[list[Chain]] = None
    reason: str = ""
    explored: int = 0
    budget: int = 0

    @property
    def shellable(self) -> Optional[bool]:
        return {"shellable": True, "not_shellable": False}.get(self.status)


def _bfs_chain_order(L: LabeledInterval) -> list[Chain]:
    graph = chain_graph(L)
    adj: dict[int, list[int]] = {i: [] for i in range(len(graph.chains))}
    for a, b in graph.edges:
        adj[a].append(b)
        adj[b].append(a)
    order = [0]
    seen = {0}
    queue = [0]
    while queue:
        v = queue.pop(0)
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return [graph.chains[i] for i in order]


def search_shelling(
    L: LabeledInterval,
    budget: int = DEFAULT_SHELLING_BUDGET,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
) -> ShellingSearchResult:
    """Decide shellability where feasible.

    Rank <= 2 posets are always shellable; a rank-3 poset is shellable iff
    its proper part is connected; a poset with a non-chain-connected
    interval is never shellable (intervals of shellable posets are
    shellable).  Everything else goes to a branch-and-bound over shelling
    prefixes with memoized dead prefix sets.
    """
    chains = maximal_chains(L, budget=chain_budget)
    if L.rank <= 2:
        good, _ = is_shelling(L, chains)
        if not good:
            raise InternalCheckFailed("rank <= 2 interval failed the shelling check")
        return ShellingSearchResult(
            status="shellable", order=chains, reason="rank <= 2"
        )

    tcc, witness = is_totally_chain_connected(L, budget=chain_budget)
    if not tcc:
        x, y = witness
        return ShellingSearchResult(
            status="not_shellable",
            reason=f"interval [{L.names[x]}, {L.names[y]}] is not chain-connected",
        )

    if L.rank == 3:
        order = _bfs_chain_order(L)
        good, pair = is_shelling(L, order)
        if not good:
            raise InternalCheckFailed(f"rank-3 breadth-first order rejected: {pair}")
        return ShellingSearchResult(
            status="shellable", order=order, reason="rank 3 with connected proper part"
        )

    return _search_branch_and_bound(L, chains, budget)


def _search_branch_and_bound(
    L: LabeledInterval, chains: list[Chain], budget: int
) -> ShellingSearchResult:
    m = len(chains)
    node_mask = [0] * len(L)
    for v in range(len(L)):
        node_mask[v] = 1 << v
    chain_mask = [0] * m
    for i, c in enumerate(chains):
        for v in c:
            chain_mask[i] |= node_mask[v]
    # diff[i][j]: mask of the unique node of chain j missing from chain i,
    # when the two chains are chain-graph neighbors; else 0
    diff = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                d = chain_mask[j] & ~chain_mask[i]
                if d and d & (d - 1) == 0:
                    diff[i][j] = d

    removable = [0] * m  # node mask of removable elements per candidate
    blockers: list[set[int]] = [set() for _ in range(m)]
    placed: list[int] = []
    unplaced = list(range(m))
    unplaced_set = set(unplaced)
    failed: set[int] = set()
    solution: list[int] = []
    explored = 0

    def place(p: int) -> list[tuple]:
        journal: list[tuple] = []
        mask_p = chain_mask[p]
        for c in unplaced_set:
            x = diff[p][c]
            if x and not removable[c] & x:
                removable[c] |= x
                gone = {M for M in blockers[c] if not chain_mask[M] & x}
                if gone:
                    blockers[c] -= gone
                journal.append(("rem", c, x, gone))
            if removable[c] & ~mask_p == 0:
                blockers[c].add(p)
                journal.append(("blk", c, p))
        return journal

    def undo(journal: list[tuple]) -> None:
        for entry in reversed(journal):
            if entry[0] == "rem":
                _, c, x, gone = entry
                removable[c] &= ~x
                blockers[c] |= gone
            else:
                blockers[entry[1]].discard(entry[2])

    def rec(placed_mask: int) -> Optional[bool]:
        """True = complete order found, False = subtree exhausted, None = budget."""
        nonlocal explored
        explored += 1
        if explored > budget:
            return None
        if not unplaced_set:
            solution.extend(placed)
            return True
        if placed_mask in failed:
            return False
        hit_budget = False
        for c in sorted(unplaced_set):
            if placed and (not removable[c] or blockers[c]):
                continue
            placed.append(c)
            unplaced_set.discard(c)
            journal = place(c)
            result = rec(placed_mask | (1 << c))
            undo(journal)
            unplaced_set.add(c)
            placed.pop()
            if result is True:
                return True
            if result is None:
                hit_budget = True
                break
        if hit_budget:
            return None
        if len(failed) < MEMO_CAP:
            failed.add(placed_mask)
        return False

    outcome = rec(0)
    if outcome is True:
        order = [chains[i] for i in solution]
        good, pair = is_shelling(L, order)
        if not good:
            raise InternalCheckFailed(f"search produced a non-shelling: {pair}")
        return ShellingSearchResult(
            status="shellable", order=order, reason="search", explored=explored,
            budget=budget,
        )
    if outcome is False:
        return ShellingSearchResult(
            status="not_shellable",
            reason="prefix search exhausted",
            explored=explored,
            budget=budget,
        )
    return ShellingSearchResult(
        status="inconclusive",
        reason=f"budget of {budget} search nodes exhausted",
        explored=explored,
        budget=budget,
    )
