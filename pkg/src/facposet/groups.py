"""Finite group oracles and the prefix-order interval below a target.

Oracles come from permutation generators (cycle notation) or an explicit
multiplication table.  Elements are dense integer ids; ``mul``/``inv`` are
total.  The distinguished generating set must generate the whole universe
as a monoid and be closed under conjugation; ``validate_generating_set``
reports each invariant separately with witnesses.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ElementCapExceeded, MalformedOracle, TargetUnreachable
from .interval import GroupContext, LabeledInterval, ValidationReport

Perm = tuple[int, ...]

DEFAULT_ELEMENT_CAP = 100_000
TABLE_THRESHOLD = 10_000
EXHAUSTIVE_ASSOC_CAP = 512


# -- permutations -------------------------------------------------------------


def compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(i) = p(q(i)): apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def parse_cycles(text: str, degree: Optional[int] = None) -> Perm:
    """Parse 1-based cycle notation like ``(1 2)(3 4)``; ``()``/``e`` is identity."""
    text = text.strip()
    if text in ("()", "e", "id", ""):
        return tuple(range(degree or 1))
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        points = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if len(points) != len(set(points)) or any(p < 1 for p in points):
            raise MalformedOracle(f"bad cycle {body!r}")
        if len(points) > 1:
            cycles.append(points)
    if not re.fullmatch(r"(\([^()]*\))+", text):
        raise MalformedOracle(f"cannot parse permutation {text!r}")
    deg = degree or max((p for cyc in cycles for p in cyc), default=1)
    images = list(range(deg))
    for cyc in cycles:
        if max(cyc) > deg:
            raise MalformedOracle(f"point {max(cyc)} exceeds degree {deg}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def cycle_notation(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i + 1)
            i = p[i]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"


def pad(p: Perm, degree: int) -> Perm:
    return p + tuple(range(len(p), degree))


# -- oracle --------------------------------------------------------------------


class GroupOracle:
    """A finite group with a distinguished generating set."""

    def __init__(
        self,
        order: int,
        identity: int,
        generators: Sequence[int],
        source: str,
        names: Sequence[str],
        table: Optional[np.ndarray] = None,
        perms: Optional[list[Perm]] = None,
    ):
        self.order = order
        self.identity = identity
        self.generators = list(generators)
        self.source = source
        self.names = list(names)
        self._table = table
        self._perms = perms
        self._perm_index = (
            {p: i for i, p in enumerate(perms)} if perms is not None else None
        )
        self._inv: Optional[list[int]] = None

    # construction -------------------------------------------------------

    @classmethod
    def from_permutations(
        cls,
        generators: Sequence[Perm],
        ambient: Optional[Sequence[Perm]] = None,
        max_elements: int = DEFAULT_ELEMENT_CAP,
        table_threshold: int = TABLE_THRESHOLD,
    ) -> "GroupOracle":
        closure_gens = list(ambient) if ambient is not None else list(generators)
        closure_gens += [g for g in generators if g not in closure_gens]
        degree = max((len(p) for p in closure_gens), default=1)
        closure_gens = [pad(p, degree) for p in closure_gens]
        gen_perms = [pad(p, degree) for p in generators]

        ident = tuple(range(degree))
        perms: list[Perm] = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in closure_gens:
                    q = compose(p, g)
                    if q not in index:
                        if len(perms) >= max_elements:
                            raise ElementCapExceeded(
                                f"group exceeds {max_elements} elements"
                            )
                        index[q] = len(perms)
                        perms.append(q)
                        nxt.append(q)
            frontier = nxt
        n = len(perms)
        names = [cycle_notation(p) for p in perms]
        gen_ids = []
        for p in gen_perms:
            if p not in index:
                raise MalformedOracle("generator outside the ambient closure")
            gen_ids.append(index[p])

        table = None
        if n <= table_threshold:
            arr = np.array(perms, dtype=np.int64)
            base = max(degree, 2)
            powers = base ** np.arange(degree, dtype=np.int64)
            codes = arr @ powers
            order_idx = np.argsort(codes, kind="stable")
            sorted_codes = codes[order_idx]
            table = np.empty((n, n), dtype=np.int32)
            for a in range(n):
                rows = arr[a][arr]  # rows[b] = perms[a] o perms[b]
                table[a] = order_idx[np.searchsorted(sorted_codes, rows @ powers)]
        return cls(
            order=n,
            identity=0,
            generators=gen_ids,
            source="permutation",
            names=names,
            table=table,
            perms=perms,
        )

    @classmethod
    def from_table(
        cls,
        order: int,
        mul_table: Sequence[Sequence[int]] | Sequence[int],
        identity: int,
        generators: Sequence[int],
        names: Optional[Sequence[str]] = None,
    ) -> "GroupOracle":
        flat = np.asarray(mul_table, dtype=np.int64)
        if flat.ndim == 1:
            if flat.size != order * order:
                raise MalformedOracle("multiplication table has wrong size")
            flat = flat.reshape(order, order)
        if flat.shape != (order, order):
            raise MalformedOracle("multiplication table has wrong shape")
        if flat.min(initial=0) < 0 or flat.max(initial=0) >= order:
            raise MalformedOracle("multiplication table entries out of range")
        if not 0 <= identity < order:
            raise MalformedOracle("identity id out of range")
        if any(not 0 <= g < order for g in generators):
            raise MalformedOracle("generator id out of range")
        return cls(
            order=order,
            identity=identity,
            generators=list(generators),
            source="table",
            names=list(names) if names else [str(i) for i in range(order)],
            table=flat.astype(np.int32),
        )

    @classmethod
    def from_table_json(cls, data: dict) -> "GroupOracle":
        try:
            return cls.from_table(
                order=data["order"],
                mul_table=data["mul"],
                identity=data["identity"],
                generators=data["generators"],
                names=data.get("names"),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedOracle(f"malformed table JSON: {exc}") from exc

    # operations -----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return self._perm_index[compose(self._perms[a], self._perms[b])]

    def inv(self, a: int) -> int:
        if self._inv is None:
            if self._perms is not None:
                self._inv = [self._perm_index[invert(p)] for p in self._perms]
            else:
                inv = [-1] * self.order
                for x in range(self.order):
                    for y in range(self.order):
                        if self.mul(x, y) == self.identity:
                            inv[x] = y
                            break
                if any(v < 0 for v in inv):
                    raise MalformedOracle("some element has no inverse")
                self._inv = inv
        return self._inv[a]

    def conjugate(self, g: int, a: int) -> int:
        """g^-1 * a * g."""
        return self.mul(self.mul(self.inv(g), a), g)

    def name(self, a: int) -> str:
        return self.names[a]

    def element_by_name(self, name: str) -> int:
        if self._perms is not None:
            p = pad(parse_cycles(name), len(self._perms[0]))
            if p not in self._perm_index:
                raise MalformedOracle(f"permutation {name!r} not in the group")
            return self._perm_index[p]
        if name in self.names:
            return self.names.index(name)
        try:
            return int(name)
        except ValueError as exc:
            raise MalformedOracle(f"element id expected, got {name!r}") from exc

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls_ = sorted({self.conjugate(g, x) for g in range(self.order)})
            seen.update(cls_)
            classes.append(tuple(cls_))
        return classes


def load_permutation_group(text: str) -> list[Perm]:
    """One permutation per non-comment line, cycle notation."""
    perms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        perms.append(parse_cycles(line))
    if not perms:
        raise MalformedOracle("no generators in input")
    degree = max(len(p) for p in perms)
    return [pad(p, degree) for p in perms]


# -- validation -----------------------------------------------------------------


def validate_generating_set(
    oracle: GroupOracle, seed: int = 0, samples: int = 20_000
) -> ValidationReport:
    """Check the four oracle invariants, with witnesses on failure."""
    report = ValidationReport()
    n = oracle.order

    witness = None
    if oracle._table is not None and n <= EXHAUSTIVE_ASSOC_CAP:
        T = oracle._table.astype(np.int64)
        for x in range(n):
            left = T[T[x], :]
            right = T[x][T]
            if not np.array_equal(left, right):
                y, z = map(int, np.argwhere(left != right)[0])
                witness = (x, y, z)
                break
        report.add("associative", witness is None, witness)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            x, y, z = (rng.randrange(n) for _ in range(3))
            if oracle.mul(oracle.mul(x, y), z) != oracle.mul(x, oracle.mul(y, z)):
                witness = (x, y, z)
                break
        report.add("associative_sampled", witness is None, witness)

    witness = next(
        (x for x in range(n) if oracle.mul(x, oracle.inv(x)) != oracle.identity),
        None,
    )
    report.add("inverses", witness is None, witness)

    reached = {oracle.identity}
    frontier = [oracle.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for a in oracle.generators:
                y = oracle.mul(x, a)
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    report.add(
        "monoid_generation",
        len(reached) == n,
        None if len(reached) == n else sorted(set(range(n)) - reached)[:3],
    )

    genset = set(oracle.generators)
    witness = None
    for a in oracle.generators:
        for g in range(n):
            c = oracle.conjugate(g, a)
            if c not in genset:
                witness = (oracle.name(a), oracle.name(g), oracle.name(c))
                break
        if witness:
            break
    report.add("conjugation_closed", witness is None, witness)
    return report


# -- lengths and the interval ------------------------------------------------------


@dataclass
class LengthTable:
    target: int
    lengths: dict[int, int]
    top_length: int


def length_bfs(oracle: GroupOracle, target: int) -> LengthTable:
    """BFS in the right Cayley graph; distances for all elements at depth <= l(target)."""
    lengths = {oracle.identity: 0}
    frontier = [oracle.identity]
    depth = 0
    found = target == oracle.identity
    while frontier:
        if found:
            break
        nxt = []
        depth += 1
        for x in frontier:
            for a in oracle.generators:
                y = oracle.mul(x, a)
                if y not in lengths:
                    lengths[y] = depth
                    nxt.append(y)
                    if y == target:
                        found = True
        frontier = nxt
    if not found:
        raise TargetUnreachable(
            f"target {oracle.name(target)!r} not generated by the generating set"
        )
    return LengthTable(target=target, lengths=lengths, top_length=lengths[target])


def build_labeled_interval(
    oracle: GroupOracle, target: int, table: Optional[LengthTable] = None
) -> LabeledInterval:
    """The prefix-order interval below ``target`` with its natural edge labeling."""
    if table is None:
        table = length_bfs(oracle, target)
    n = table.top_length
    lengths = table.lengths
    members = []
    for x, lx in lengths.items():
        rest = lengths.get(oracle.mul(oracle.inv(x), target))
        if rest is not None and lx + rest == n:
            members.append(x)
    members.sort(key=lambda x: (lengths[x], oracle.name(x)))
    index = {x: i for i, x in enumerate(members)}

    used_gens: set[int] = set()
    raw_edges = []
    for x in members:
        for a in oracle.generators:
            y = oracle.mul(x, a)
            j = index.get(y)
            if j is not None and lengths[y] == lengths[x] + 1:
                raw_edges.append((index[x], j, a))
                used_gens.add(a)

    alphabet_elts = sorted(used_gens, key=oracle.name)
    label_ids = {a: i for i, a in enumerate(alphabet_elts)}
    edges = [(u, v, label_ids[a]) for u, v, a in raw_edges]

    return LabeledInterval(
        names=[oracle.name(x) for x in members],
        ranks=[lengths[x] for x in members],
        edges=edges,
        bottom=index[oracle.identity],
        top=index[target],
        alphabet=[oracle.name(a) for a in alphabet_elts],
        group=GroupContext(
            oracle=oracle,
            node_elements=tuple(members),
            label_elements=tuple(alphabet_elts),
        ),
    )


def interval_from_files(group_text: str, target_text: str, **kwargs) -> LabeledInterval:
    perms = load_permutation_group(group_text)
    oracle = GroupOracle.from_permutations(perms, **kwargs)
    degree = len(oracle._perms[0])
    target = pad(parse_cycles(target_text), degree)
    if target not in oracle._perm_index:
        raise MalformedOracle(f"target {target_text!r} not in the generated group")
    return build_labeled_interval(oracle, oracle._perm_index[target])


def interval_from_table_json(data: dict, target: int) -> LabeledInterval:
    oracle = GroupOracle.from_table_json(data)
    if not 0 <= target < oracle.order:
        raise MalformedOracle(f"target id {target} out of range")
    return build_labeled_interval(oracle, target)


def load_table_file(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
