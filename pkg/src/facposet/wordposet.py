"""Build labeled intervals from length-2 relation classes and seed words.

Several fixtures come from groups given by presentations whose defining
relations are (almost entirely) equalities between length-2 products.  Such
an element class is a disjoint union of cycles ``a1 -> a2 -> ... -> ak -> a1``
with the element equal to every consecutive product.  Closing a seed word
under adjacent-pair substitutions enumerates all reduced words of the top
element, and identifying prefixes across substitutions recovers the interval
together with its natural labeling.  Identifications that are not expressible
as pair classes (rare) are supplied explicitly via ``extra_merges``.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import InvalidInterval
from .interval import LabeledInterval, validate_interval

Wordt = tuple[str, ...]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def _class_words(cls: Sequence[Sequence[str]]) -> list[tuple[str, str]]:
    words = []
    for cycle in cls:
        k = len(cycle)
        if k == 1:
            words.append((cycle[0], cycle[0]))
        else:
            for i in range(k):
                words.append((cycle[i], cycle[(i + 1) % k]))
    return words


def interval_from_word_classes(
    classes: Sequence[Sequence[Sequence[str]]],
    seeds: Sequence[Sequence[str]],
    letters: Sequence[str],
    extra_merges: Sequence[tuple[Sequence[str], Sequence[str]]] = (),
    name_overrides: Optional[dict[str, str]] = None,
    bottom_name: str = "e",
) -> LabeledInterval:
    """Close ``seeds`` under pair substitutions and quotient the prefixes.

    ``classes``: one entry per length-2 element, as a list of label cycles.
    ``letters``: the alphabet in its display order (used for canonical names).
    ``extra_merges``: pairs of prefix words to identify beyond pair moves.
    """
    pair_class: dict[tuple[str, str], int] = {}
    class_pairs: list[list[tuple[str, str]]] = []
    for ci, cls in enumerate(classes):
        words = _class_words(cls)
        class_pairs.append(words)
        for w in words:
            if w in pair_class:
                raise InvalidInterval(f"pair {w} appears in two classes")
            pair_class[w] = ci

    seeds = [tuple(s) for s in seeds]
    n = len(seeds[0])
    if any(len(s) != n for s in seeds):
        raise InvalidInterval("seed words must all have the same length")

    words: list[Wordt] = []
    index: dict[Wordt, int] = {}
    # substitution edges (word, word', position): the words agree except for
    # the pair at 0-based positions (i, i+1), which was swapped within its
    # class, so all prefix products except the one of length i+1 coincide
    subs: list[tuple[Wordt, Wordt, int]] = []

    def intern(w: Wordt) -> int:
        if w not in index:
            index[w] = len(words)
            words.append(w)
        return index[w]

    frontier = [words[intern(s)] for s in seeds]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n - 1):
                pair = (w[i], w[i + 1])
                ci = pair_class.get(pair)
                if ci is None:
                    raise InvalidInterval(
                        f"pair {pair} in generated word {w} belongs to no class"
                    )
                for x, y in class_pairs[ci]:
                    if (x, y) == pair:
                        continue
                    w2 = w[:i] + (x, y) + w[i + 2 :]
                    known = w2 in index
                    intern(w2)
                    subs.append((w, w2, i))
                    if not known:
                        nxt.append(w2)
        frontier = nxt

    # union-find over literal prefix words; equal spellings are equal products
    uf = _UnionFind()
    full_words = list(index)
    for w in full_words:
        uf.union(full_words[0], w)
    for w, w2, i in subs:
        for k in range(i + 2, n + 1):
            uf.union(w[:k], w2[:k])
    for left, right in extra_merges:
        left, right = tuple(left), tuple(right)
        prefixes = {w[:k] for w in full_words for k in range(n + 1)}
        if left not in prefixes or right not in prefixes or len(left) != len(right):
            raise InvalidInterval(f"extra merge {left}={right} matches no prefix")
        uf.union(left, right)

    letter_pos = {a: i for i, a in enumerate(letters)}

    def word_key(w: Wordt) -> tuple[int, ...]:
        return tuple(letter_pos[a] for a in w)

    # canonical name per class: lexicographically least prefix word
    best: dict = {}
    ranks_of: dict = {}
    for w in full_words:
        for k in range(n + 1):
            root = uf.find(w[:k])
            prefix = w[:k]
            cur = best.get(root)
            if cur is None or word_key(prefix) < word_key(cur):
                best[root] = prefix
            ranks_of.setdefault(root, k)

    overrides = name_overrides or {}

    def display(root) -> str:
        prefix = best[root]
        if not prefix:
            return bottom_name
        joined = "".join(prefix)
        return overrides.get(joined, joined)

    roots = sorted(best, key=lambda r: (ranks_of[r], display(r)))
    node_of = {r: i for i, r in enumerate(roots)}
    names = [display(r) for r in roots]
    ranks = [ranks_of[r] for r in roots]

    alphabet = sorted({a for w in full_words for a in w})
    label_ids = {a: i for i, a in enumerate(alphabet)}

    edge_set: dict[tuple[int, int], int] = {}
    for w in full_words:
        for k in range(n):
            u = node_of[uf.find(w[:k])]
            v = node_of[uf.find(w[: k + 1])]
            lab = label_ids[w[k]]
            prev = edge_set.get((u, v))
            if prev is not None and prev != lab:
                raise InvalidInterval(
                    f"edge {names[u]!r}->{names[v]!r} would carry two labels"
                )
            edge_set[(u, v)] = lab

    bottom = node_of[uf.find(())]
    top = node_of[uf.find(full_words[0])]
    L = LabeledInterval(
        names=names,
        ranks=ranks,
        edges=[(u, v, lab) for (u, v), lab in sorted(edge_set.items())],
        bottom=bottom,
        top=top,
        alphabet=alphabet,
    )
    report = validate_interval(L)
    if not report.ok:
        raise InvalidInterval(f"generated interval invalid: {report.failures()}")
    return L
