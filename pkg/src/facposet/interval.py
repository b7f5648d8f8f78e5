"""Bounded graded labeled intervals: the carrier type for all analyses.

A :class:`LabeledInterval` is a bounded graded poset given by its Hasse
diagram, with edges optionally labeled by generator identifiers.  When the
interval was built from a group oracle, the group semantics ride along in
``group`` so that group-aware operations (duality, orbit-size symmetry)
stay available.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    ChainBudgetExceeded,
    InvalidInterval,
    NoSuchEdge,
    NotComparable,
    NotLabeled,
    SearchBudgetExceeded,
)

Chain = tuple[int, ...]
Word = tuple[int, ...]

DEFAULT_CHAIN_BUDGET = 10**6


@dataclass
class GroupContext:
    """Group semantics attached to an interval built from an oracle."""

    oracle: object
    node_elements: tuple[int, ...]
    label_elements: tuple[int, ...]


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: object = None) -> None:
        self.checks.append(CheckResult(name, bool(passed), witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


class LabeledInterval:
    """Immutable-by-convention bounded graded poset with labeled Hasse edges.

    Nodes are dense integers; ``names`` are display strings, ``ranks`` the
    grading, ``alphabet`` maps label ids to label names.  ``edges`` lists
    ``(lower, upper, label_id_or_None)``; labeling is all-or-nothing.
    """

    def __init__(
        self,
        names: Sequence[str],
        ranks: Sequence[int],
        edges: Iterable[tuple[int, int, Optional[int]]],
        bottom: int,
        top: int,
        alphabet: Sequence[str] = (),
        group: Optional[GroupContext] = None,
    ):
        self.names = tuple(names)
        self.ranks = tuple(int(r) for r in ranks)
        self.edges = tuple((int(u), int(v), lab) for u, v, lab in edges)
        self.bottom = int(bottom)
        self.top = int(top)
        self.alphabet = tuple(alphabet)
        self.group = group

        n = len(self.names)
        self.up: list[list[tuple[int, Optional[int]]]] = [[] for _ in range(n)]
        self.down: list[list[tuple[int, Optional[int]]]] = [[] for _ in range(n)]
        self.edge_label: dict[tuple[int, int], Optional[int]] = {}
        for u, v, lab in self.edges:
            self.up[u].append((v, lab))
            self.down[v].append((u, lab))
            self.edge_label[(u, v)] = lab
        for adj in self.up:
            adj.sort()
        for adj in self.down:
            adj.sort()
        self._node_by_name = {name: i for i, name in enumerate(self.names)}
        self._leq: Optional[list[set[int]]] = None
        self._rank2_cache: dict[tuple[int, int], "Rank2Data"] = {}

    # -- basic accessors ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    @property
    def rank(self) -> int:
        return self.ranks[self.top]

    @property
    def is_labeled(self) -> bool:
        return bool(self.edges) and all(lab is not None for _, _, lab in self.edges)

    def require_labeled(self) -> None:
        if len(self) > 1 and not self.is_labeled:
            raise NotLabeled("operation requires a labeled interval")

    def node(self, name: str) -> int:
        return self._node_by_name[name]

    def label_id(self, name: str) -> int:
        return self.alphabet.index(name)

    def nodes_at_rank(self, r: int) -> list[int]:
        return [i for i in range(len(self)) if self.ranks[i] == r]

    def atoms(self) -> list[int]:
        return [v for v, _ in self.up[self.bottom]]

    def atom_label(self, a: int) -> int:
        lab = self.edge_label.get((self.bottom, a))
        if lab is None:
            raise NotLabeled("atom has no label")
        return lab

    def word_names(self, word: Word) -> tuple[str, ...]:
        return tuple(self.alphabet[lab] for lab in word)

    def chain_names(self, chain: Chain) -> tuple[str, ...]:
        return tuple(self.names[v] for v in chain)

    # -- order relation ----------------------------------------------------

    def descendants(self) -> list[set[int]]:
        """For each node, the set of nodes weakly above it."""
        if self._leq is None:
            n = len(self)
            above: list[set[int]] = [set() for _ in range(n)]
            order = sorted(range(n), key=lambda v: -self.ranks[v])
            for v in order:
                acc = {v}
                for w, _ in self.up[v]:
                    acc |= above[w]
                above[v] = acc
            self._leq = above
        return self._leq

    def leq(self, x: int, y: int) -> bool:
        return y in self.descendants()[x]

    def intervals(self, min_diff: int = 0) -> Iterator[tuple[int, int]]:
        """Yield comparable pairs (x, y) with rank(y) - rank(x) >= min_diff."""
        above = self.descendants()
        for x in range(len(self)):
            for y in sorted(above[x]):
                if self.ranks[y] - self.ranks[x] >= min_diff:
                    yield (x, y)

    # -- rank-2 local structure ---------------------------------------------

    def rank2_data(self, lower: int, upper: int) -> "Rank2Data":
        key = (lower, upper)
        data = self._rank2_cache.get(key)
        if data is None:
            data = _build_rank2_data(self, lower, upper)
            self._rank2_cache[key] = data
        return data


@dataclass
class Rank2Data:
    """Local word structure of a rank-2 sub-interval [lower, upper].

    ``pairs`` maps each middle node to its length-2 word (first, second
    label); ``by_first``/``by_second`` invert it; ``cycles`` lists the
    orbit cycles as label-id sequences (a1, ..., ak) with the convention
    that consecutive labels (cyclically) are the words of the element.
    """

    lower: int
    upper: int
    pairs: dict[int, tuple[int, int]]
    by_first: dict[int, int]
    by_second: dict[int, int]
    cycles: tuple[tuple[int, ...], ...]


def _build_rank2_data(L: LabeledInterval, lower: int, upper: int) -> Rank2Data:
    L.require_labeled()
    pairs: dict[int, tuple[int, int]] = {}
    for mid, first in L.up[lower]:
        second = L.edge_label.get((mid, upper))
        if second is not None and first is not None:
            pairs[mid] = (first, second)
    by_first = {a: mid for mid, (a, _) in pairs.items()}
    by_second = {b: mid for mid, (_, b) in pairs.items()}
    if len(by_first) != len(pairs) or len(by_second) != len(pairs):
        raise InvalidInterval(
            f"ambiguous rank-2 words between {L.names[lower]!r} and {L.names[upper]!r}"
        )
    cycles = []
    seen: set[int] = set()
    for start in sorted(pairs, key=lambda m: pairs[m][0]):
        if start in seen:
            continue
        cyc: list[int] = []
        mid = start
        while mid not in seen:
            seen.add(mid)
            cyc.append(pairs[mid][0])
            nxt = by_first.get(pairs[mid][1])
            if nxt is None:
                raise InvalidInterval(
                    f"broken word cycle at {L.names[mid]!r} below {L.names[upper]!r}"
                )
            mid = nxt
        if mid != start:
            raise InvalidInterval(
                f"word successor map is not a permutation below {L.names[upper]!r}"
            )
        cycles.append(tuple(cyc))
    return Rank2Data(lower, upper, pairs, by_first, by_second, tuple(cycles))


# -- validation -------------------------------------------------------------


def validate_interval(L: LabeledInterval) -> ValidationReport:
    """Check the structural invariants; report witnesses instead of raising."""
    report = ValidationReport()
    n = len(L)

    ok = n > 0 and len(set(L.names)) == n
    report.add("unique_names", ok)

    bottoms = [v for v in range(n) if not L.down[v]]
    tops = [v for v in range(n) if not L.up[v]]
    bounded = bottoms == [L.bottom] and tops == [L.top] and L.ranks[L.bottom] == 0
    report.add("bounded", bounded, None if bounded else (bottoms, tops))
    if not bounded:
        return report

    bad_edge = next(
        (e for e in L.edges if L.ranks[e[1]] != L.ranks[e[0]] + 1), None
    )
    report.add("graded_edges", bad_edge is None, bad_edge)

    above = L.descendants()
    unreach = [v for v in range(n) if L.top not in above[v]]
    below_ok = all(v in above[L.bottom] for v in range(n))
    report.add("spanning", not unreach and below_ok, unreach or None)

    labels = [lab for _, _, lab in L.edges]
    if any(lab is not None for lab in labels) and any(lab is None for lab in labels):
        report.add("labeling_total", False)
        return report
    report.add("labeling_total", True)

    if L.is_labeled:
        dup = None
        for v in range(n):
            out_labels = [lab for _, lab in L.up[v]]
            if len(set(out_labels)) != len(out_labels):
                dup = L.names[v]
                break
        report.add("distinct_out_labels", dup is None, dup)

        edge_labels = {lab for _, _, lab in L.edges}
        atom_labels = {lab for _, lab in L.up[L.bottom]}
        report.add(
            "alphabet_consistent",
            edge_labels == atom_labels == set(range(len(L.alphabet))),
            sorted(edge_labels ^ atom_labels),
        )

        witness = None
        if dup is None:
            for x, y in L.intervals(min_diff=2):
                if L.ranks[y] - L.ranks[x] != 2:
                    continue
                try:
                    L.rank2_data(x, y)
                except InvalidInterval as exc:
                    witness = (L.names[x], L.names[y], str(exc))
                    break
        report.add("rank2_cycle_consistency", witness is None, witness)

    return report


# -- chains and words --------------------------------------------------------


def maximal_chains(
    L: LabeledInterval, budget: int = DEFAULT_CHAIN_BUDGET
) -> list[Chain]:
    """All maximal chains bottom->top, in lexicographic node-id order."""
    chains: list[Chain] = []
    stack: list[int] = [L.bottom]

    def rec(v: int) -> None:
        if v == L.top:
            if len(chains) >= budget:
                raise ChainBudgetExceeded(f"more than {budget} maximal chains")
            chains.append(tuple(stack))
            return
        for w, _ in L.up[v]:
            stack.append(w)
            rec(w)
            stack.pop()

    rec(L.bottom)
    return chains


def chain_word(L: LabeledInterval, chain: Chain) -> Word:
    """Read the labels along a chain (the chain/word bijection, forward)."""
    L.require_labeled()
    word = []
    for u, v in zip(chain, chain[1:]):
        lab = L.edge_label.get((u, v))
        if lab is None:
            raise NoSuchEdge(f"no labeled edge {L.names[u]!r} -> {L.names[v]!r}")
        word.append(lab)
    return tuple(word)


def word_chain(L: LabeledInterval, word: Word) -> Chain:
    """Follow labels upward from the bottom (the bijection, inverse)."""
    L.require_labeled()
    v = L.bottom
    chain = [v]
    for lab in word:
        nxt = next((w for w, l in L.up[v] if l == lab), None)
        if nxt is None:
            raise NoSuchEdge(
                f"no out-edge labeled {L.alphabet[lab]!r} at {L.names[v]!r}"
            )
        v = nxt
        chain.append(v)
    if v != L.top:
        raise NoSuchEdge("word does not reach the top element")
    return tuple(chain)


# -- sub-intervals ------------------------------------------------------------


def subinterval(L: LabeledInterval, x: int, y: int) -> LabeledInterval:
    """The induced labeled interval on {z : x <= z <= y}, ranks shifted."""
    if not L.leq(x, y):
        raise NotComparable(f"{L.names[x]!r} is not below {L.names[y]!r}")
    above_x = L.descendants()[x]
    keep = sorted(
        (z for z in above_x if L.leq(z, y)),
        key=lambda z: (L.ranks[z], L.names[z]),
    )
    index = {z: i for i, z in enumerate(keep)}
    base = L.ranks[x]
    edges = []
    used_labels: set[int] = set()
    for u, v, lab in L.edges:
        if u in index and v in index:
            edges.append((index[u], index[v], lab))
            if lab is not None:
                used_labels.add(lab)
    if L.is_labeled:
        sub_alpha = sorted(used_labels, key=lambda lab: L.alphabet[lab])
        remap = {lab: i for i, lab in enumerate(sub_alpha)}
        edges = [(u, v, remap[lab]) for u, v, lab in edges]
        alphabet = tuple(L.alphabet[lab] for lab in sub_alpha)
    else:
        alphabet = ()
        sub_alpha = []
    group = None
    if L.group is not None and L.is_labeled:
        group = GroupContext(
            oracle=L.group.oracle,
            node_elements=tuple(L.group.node_elements[z] for z in keep),
            label_elements=tuple(L.group.label_elements[lab] for lab in sub_alpha),
        )
    return LabeledInterval(
        names=[L.names[z] for z in keep],
        ranks=[L.ranks[z] - base for z in keep],
        edges=edges,
        bottom=index[x],
        top=index[y],
        alphabet=alphabet,
        group=group,
    )


# -- duality -------------------------------------------------------------------


def duality_check(
    L: LabeledInterval, search_cap: int = 25
) -> tuple[bool, Optional[tuple[str, str]]]:
    """Decide self-duality.

    Group-backed intervals use the canonical map y -> bottom * y^-1 * top and
    return a failing node/edge pair on failure.  Abstract posets fall back to
    searching for an order-reversing bijection, feasible only for small node
    counts.
    """
    if L.group is not None:
        return _duality_group(L)
    if len(L) > search_cap:
        raise SearchBudgetExceeded(
            f"abstract self-duality search capped at {search_cap} nodes"
        )
    return (_antiautomorphism_exists(L), None)


def _duality_group(L: LabeledInterval) -> tuple[bool, Optional[tuple[str, str]]]:
    g = L.group
    oracle = g.oracle
    bot = g.node_elements[L.bottom]
    top = g.node_elements[L.top]
    elt_to_node = {e: v for v, e in enumerate(g.node_elements)}
    kappa: dict[int, int] = {}
    for v in range(len(L)):
        img = oracle.mul(bot, oracle.mul(oracle.inv(g.node_elements[v]), top))
        w = elt_to_node.get(img)
        if w is None:
            return False, (L.names[v], "image outside interval")
        kappa[v] = w
    if len(set(kappa.values())) != len(L):
        return False, ("map", "not a bijection")
    for u, v, _ in L.edges:
        if (kappa[v], kappa[u]) not in L.edge_label:
            return False, (L.names[u], L.names[v])
    return True, None


def _antiautomorphism_exists(L: LabeledInterval) -> bool:
    n_rank = L.rank
    by_rank = [L.nodes_at_rank(r) for r in range(n_rank + 1)]
    if [len(b) for b in by_rank] != [len(b) for b in reversed(by_rank)]:
        return False
    order = [v for r in range(n_rank + 1) for v in by_rank[r]]
    phi: dict[int, int] = {}
    used: set[int] = set()
    downs = [sorted(u for u, _ in L.down[v]) for v in range(len(L))]

    def consistent(v: int, w: int) -> bool:
        # v has rank r, w has rank n-r; check covers of v against covers above w
        for u in downs[v]:
            if u in phi and (w, phi[u]) not in L.edge_label:
                return False
        up_w = {x for x, _ in L.up[w]}
        for u in downs[v]:
            if u in phi and phi[u] not in up_w:
                return False
        # every already-mapped upper cover of v must map to a lower cover of w
        for x, _ in L.up[v]:
            if x in phi and (phi[x], w) not in L.edge_label:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        target_rank = n_rank - L.ranks[v]
        for w in by_rank[target_rank]:
            if w in used or not consistent(v, w):
                continue
            phi[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    return rec(0)


# -- Moebius invariant ----------------------------------------------------------


def mobius_invariant(L: LabeledInterval) -> int:
    """mu(bottom, top), computed twice (recursion and alternating chain count)."""
    from .errors import InternalCheckFailed

    above = L.descendants()
    below: list[list[int]] = [[] for _ in range(len(L))]
    for x in range(len(L)):
        for y in above[x]:
            if y != x:
                below[y].append(x)

    order = sorted(range(len(L)), key=lambda v: L.ranks[v])
    mu: dict[int, int] = {}
    for v in order:
        mu[v] = 1 if v == L.bottom else -sum(mu[z] for z in below[v])
    mu_rec = mu[L.top]

    # Philip Hall: alternating count of strict chains bottom -> top
    if L.bottom == L.top:
        mu_hall = 1
    else:
        paths: dict[int, dict[int, int]] = {L.bottom: {0: 1}}
        for v in order:
            if v == L.bottom:
                continue
            acc: dict[int, int] = {}
            for z in below[v]:
                for k, cnt in paths.get(z, {}).items():
                    acc[k + 1] = acc.get(k + 1, 0) + cnt
            paths[v] = acc
        mu_hall = sum((-1) ** k * cnt for k, cnt in paths[L.top].items())

    if mu_rec != mu_hall:
        raise InternalCheckFailed(
            f"Moebius mismatch: recursion {mu_rec} vs chain count {mu_hall}"
        )
    return mu_rec


# -- serialization ----------------------------------------------------------------


def to_json_dict(L: LabeledInterval) -> dict:
    nodes = [
        {"id": i, "name": L.names[i], "rank": L.ranks[i]} for i in range(len(L))
    ]
    edges = []
    for u, v, lab in L.edges:
        e = {"from": u, "to": v}
        if lab is not None:
            e["label"] = L.alphabet[lab]
        edges.append(e)
    return {"nodes": nodes, "edges": edges, "bottom": L.bottom, "top": L.top}


def from_json_dict(data: dict) -> LabeledInterval:
    try:
        nodes = data["nodes"]
        ids = [n["id"] for n in nodes]
        if sorted(ids) != list(range(len(ids))):
            raise InvalidInterval("node ids must be dense 0..n-1")
        names = [""] * len(ids)
        ranks = [0] * len(ids)
        for n in nodes:
            names[n["id"]] = str(n["name"])
            ranks[n["id"]] = int(n["rank"])
        raw_edges = data["edges"]
        label_names = sorted({e["label"] for e in raw_edges if "label" in e})
        label_ids = {name: i for i, name in enumerate(label_names)}
        edges = [
            (e["from"], e["to"], label_ids[e["label"]] if "label" in e else None)
            for e in raw_edges
        ]
        return LabeledInterval(
            names=names,
            ranks=ranks,
            edges=edges,
            bottom=data["bottom"],
            top=data["top"],
            alphabet=label_names,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInterval(f"malformed interval JSON: {exc}") from exc


def load_interval(path) -> LabeledInterval:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def dump_interval(L: LabeledInterval, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(L), fh, indent=1, sort_keys=True)
        fh.write("\n")


def hasse_dot(L: LabeledInterval) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(len(L)):
        lines.append(f'  n{i} [label="{L.names[i]}"];')
    for u, v, lab in L.edges:
        attr = f' [label="{L.alphabet[lab]}"]' if lab is not None else ""
        lines.append(f"  n{u} -> n{v}{attr};")
    lines.append("}")
    return "\n".join(lines)
