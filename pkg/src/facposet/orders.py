"""Linear orders on the generator alphabet and everything built on them.

A generator order is a tuple of label ids, smallest first.  Compatibility
asks every length-2 element for a unique rising word; the well-covered
property and EL verification refine that across all intervals.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Optional, Sequence

from .errors import (
    InternalCheckFailed,
    NotAnAtom,
    SearchBudgetExceeded,
    UnknownLabel,
)
from .interval import (
    DEFAULT_CHAIN_BUDGET,
    LabeledInterval,
    Word,
    chain_word,
    maximal_chains,
    subinterval,
)

GeneratorOrder = tuple[int, ...]

BRUTE_FORCE_ALPHABET = 8
DEFAULT_ORDER_BUDGET = 1_000_000


def normalize_order(L: LabeledInterval, order: Sequence[int | str]) -> GeneratorOrder:
    """Accept label ids or names; require a permutation of the alphabet."""
    ids = []
    for item in order:
        if isinstance(item, str):
            if item not in L.alphabet:
                raise UnknownLabel(f"label {item!r} not in alphabet")
            ids.append(L.alphabet.index(item))
        else:
            ids.append(int(item))
    if sorted(ids) != list(range(len(L.alphabet))):
        raise UnknownLabel(
            f"order {order!r} is not a permutation of the {len(L.alphabet)}-letter alphabet"
        )
    return tuple(ids)


def order_names(L: LabeledInterval, order: GeneratorOrder) -> tuple[str, ...]:
    return tuple(L.alphabet[a] for a in order)


def restrict_order(
    L: LabeledInterval, order: GeneratorOrder, sub: LabeledInterval
) -> GeneratorOrder:
    """Restrict an order to a sub-interval's (smaller) alphabet."""
    names = [L.alphabet[a] for a in order if L.alphabet[a] in sub.alphabet]
    return normalize_order(sub, names)


def _positions(order: GeneratorOrder) -> list[int]:
    pos = [0] * len(order)
    for i, a in enumerate(order):
        pos[a] = i
    return pos


def _is_rising(word: Word, pos: Sequence[int]) -> bool:
    return all(pos[a] <= pos[b] for a, b in zip(word, word[1:]))


def rising_factorizations(
    L: LabeledInterval,
    order: GeneratorOrder,
    budget: int = DEFAULT_CHAIN_BUDGET,
) -> list[Word]:
    L.require_labeled()
    pos = _positions(order)
    out = []
    for chain in maximal_chains(L, budget=budget):
        word = chain_word(L, chain)
        if _is_rising(word, pos):
            out.append(word)
    return out


def rank2_words(L: LabeledInterval, g: int) -> list[Word]:
    """All length-2 words of a rank-2 node, from its local cycle data."""
    return sorted(L.rank2_data(L.bottom, g).pairs.values())


def is_compatible(
    L: LabeledInterval, order: GeneratorOrder
) -> tuple[bool, Optional[tuple[int, list[Word]]]]:
    """Unique rising length-2 word at every rank-2 node; witness otherwise."""
    L.require_labeled()
    pos = _positions(order)
    for g in sorted(L.nodes_at_rank(2)):
        rising = [w for w in rank2_words(L, g) if _is_rising(w, pos)]
        if len(rising) != 1:
            return False, (g, rising)
    return True, None


def _all_cycles(L: LabeledInterval) -> Optional[list[tuple[int, ...]]]:
    """One label cycle per rank-2 node, or None if some node has several."""
    cycles = []
    for g in sorted(L.nodes_at_rank(2)):
        node_cycles = L.rank2_data(L.bottom, g).cycles
        if len(node_cycles) != 1:
            return None
        cycles.append(node_cycles[0])
    return cycles


def _iter_compatible_cycles(
    L: LabeledInterval, budget: int
) -> Iterator[GeneratorOrder]:
    """Enumerate compatible orders by interleaving forced cycle rotations.

    An order is compatible iff its restriction to every label cycle
    (c0 -> c1 -> ... -> c_{k-1} -> c0) is "rotated decreasing": once the
    smallest member ci is placed, the rest must follow in the reverse cycle
    order c_{i-1}, c_{i-2}, ..., c_{i+1}.  Cycles of length <= 2 impose
    nothing.
    """
    L.require_labeled()
    cycles = _all_cycles(L)
    if cycles is None:
        return
    constraints = [c for c in cycles if len(c) >= 3]
    n = len(L.alphabet)
    in_cycles: list[list[int]] = [[] for _ in range(n)]
    for ci, cyc in enumerate(constraints):
        for a in cyc:
            in_cycles[a].append(ci)

    # per started cycle: the forced remaining sequence (list, consumed front
    # to back); None if not started
    pending: list[Optional[list[int]]] = [None] * len(constraints)
    placed: list[int] = []
    unplaced = set(range(n))
    steps = 0

    def candidates() -> list[int]:
        out = []
        for a in sorted(unplaced):
            ok = True
            for ci in in_cycles[a]:
                seq = pending[ci]
                if seq is not None and seq and seq[0] != a:
                    ok = False
                    break
            if ok:
                out.append(a)
        return out

    def rec() -> Iterator[GeneratorOrder]:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise SearchBudgetExceeded(
                f"compatible-order search exceeded {budget} steps"
            )
        if not unplaced:
            yield tuple(placed)
            return
        for a in candidates():
            started = []
            for ci in in_cycles[a]:
                seq = pending[ci]
                if seq is None:
                    cyc = constraints[ci]
                    i = cyc.index(a)
                    k = len(cyc)
                    pending[ci] = [cyc[(i - j) % k] for j in range(1, k)]
                    started.append(ci)
                else:
                    seq.pop(0)
            placed.append(a)
            unplaced.discard(a)
            yield from rec()
            unplaced.add(a)
            placed.pop()
            for ci in in_cycles[a]:
                if ci in started:
                    pending[ci] = None
                else:
                    pending[ci].insert(0, a)

    yield from rec()


def enumerate_compatible_orders(
    L: LabeledInterval,
    budget: int = DEFAULT_ORDER_BUDGET,
    method: str = "auto",
) -> list[GeneratorOrder]:
    """Complete enumeration; brute force on small alphabets, cycle
    interleaving above (sound and complete either way)."""
    L.require_labeled()
    if method == "auto":
        method = "brute" if len(L.alphabet) <= BRUTE_FORCE_ALPHABET else "cycles"
    if method == "brute":
        out = []
        steps = 0
        for perm in permutations(range(len(L.alphabet))):
            steps += 1
            if steps > budget:
                raise SearchBudgetExceeded(f"brute force exceeded {budget} orders")
            if is_compatible(L, perm)[0]:
                out.append(perm)
        return out
    if method == "cycles":
        return sorted(_iter_compatible_cycles(L, budget))
    raise ValueError(f"unknown method {method!r}")


def find_compatible_order(
    L: LabeledInterval, budget: int = DEFAULT_ORDER_BUDGET
) -> Optional[GeneratorOrder]:
    """First compatible order in lexicographic id order, or None."""
    for order in _iter_compatible_cycles(L, budget):
        return order
    return None


def f_set(
    L: LabeledInterval,
    order: GeneratorOrder,
    atom: int,
    _compatible: Optional[bool] = None,
) -> set[int]:
    """Upper covers of an atom that also cover a strictly smaller atom.

    When the order is compatible this is cross-checked against the label
    criterion: g is in the set iff the label of (atom, g) precedes the label
    of the atom itself.
    """
    if L.ranks[atom] != 1:
        raise NotAnAtom(f"{L.names[atom]!r} is not an atom")
    pos = _positions(order)
    my_pos = pos[L.atom_label(atom)]
    atom_rank = {a: pos[L.atom_label(a)] for a in L.atoms()}
    result = set()
    for g, _ in L.up[atom]:
        if any(
            atom_rank[a] < my_pos for a, _ in L.down[g] if L.ranks[a] == 1
        ):
            result.add(g)

    if _compatible is None:
        _compatible = is_compatible(L, order)[0]
    if _compatible:
        by_label = {
            g for g, lab in L.up[atom] if pos[lab] < my_pos
        }
        if by_label != result:
            raise InternalCheckFailed(
                f"cover-set criteria disagree at atom {L.names[atom]!r}"
            )
    return result


def is_well_covered(
    L: LabeledInterval, order: GeneratorOrder, _compatible: Optional[bool] = None
) -> bool:
    """The cover set is empty exactly for the smallest atom."""
    L.require_labeled()
    pos = _positions(order)
    if _compatible is None:
        _compatible = is_compatible(L, order)[0]
    atoms = sorted(L.atoms(), key=lambda a: pos[L.atom_label(a)])
    for i, a in enumerate(atoms):
        empty = not f_set(L, order, a, _compatible=_compatible)
        if empty != (i == 0):
            return False
    return True


def is_totally_well_covered(
    L: LabeledInterval,
    order: GeneratorOrder,
    budget: int = DEFAULT_CHAIN_BUDGET,
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Every interval well-covered under the restricted order."""
    L.require_labeled()
    for x, y in L.intervals(min_diff=2):
        sub = subinterval(L, x, y)
        if not is_well_covered(sub, restrict_order(L, order, sub)):
            return False, (x, y)
    return True, None


def is_el_labeling(
    L: LabeledInterval,
    order: GeneratorOrder,
    budget: int = DEFAULT_CHAIN_BUDGET,
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Every interval has a unique rising chain that lexicographically
    strictly precedes all others; witness = first failing interval."""
    L.require_labeled()
    for x, y in L.intervals(min_diff=2):
        sub = subinterval(L, x, y)
        sub_order = restrict_order(L, order, sub)
        pos = _positions(sub_order)
        words = [chain_word(sub, c) for c in maximal_chains(sub, budget=budget)]
        rising = [w for w in words if _is_rising(w, pos)]
        if len(rising) != 1:
            return False, (x, y)
        key = lambda w: tuple(pos[a] for a in w)
        if key(rising[0]) != min(key(w) for w in words):
            return False, (x, y)
    return True, None


def min_rise_rank2(L: LabeledInterval) -> tuple[int, GeneratorOrder]:
    """Minimum rising-word count over all orders of a rank-2 interval.

    Equals the number of orbit cycles; the returned order (each cycle laid
    out in reverse) attains it, which is re-verified directly.
    """
    if L.rank != 2:
        raise ValueError("min_rise_rank2 requires an interval of rank exactly 2")
    cycles = L.rank2_data(L.bottom, L.top).cycles
    order: list[int] = []
    for cyc in cycles:
        order.extend(reversed(cyc))
    order_t = tuple(order)
    pos = _positions(order_t)
    rise = sum(
        1 for w in rank2_words(L, L.top) if _is_rising(w, pos)
    )
    if rise != len(cycles):
        raise InternalCheckFailed(
            f"constructed order attains {rise} rising words, expected {len(cycles)}"
        )
    return len(cycles), order_t
