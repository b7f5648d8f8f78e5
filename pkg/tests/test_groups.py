"""Group oracle construction, validation, lengths, and interval building."""

import numpy as np
import pytest

from facposet.errors import ElementCapExceeded, MalformedOracle, TargetUnreachable
from facposet.fixtures import dihedral8_oracle, sym_transposition_oracle
from facposet.groups import (
    GroupOracle,
    build_labeled_interval,
    compose,
    cycle_notation,
    interval_from_files,
    invert,
    length_bfs,
    parse_cycles,
    validate_generating_set,
)
from facposet.interval import maximal_chains, validate_interval


def test_parse_and_print_cycles():
    p = parse_cycles("(1 2)(3 4)")
    assert p == (1, 0, 3, 2)
    assert cycle_notation(p) == "(1 2)(3 4)"
    assert parse_cycles("()", 3) == (0, 1, 2)
    assert cycle_notation((0, 1, 2)) == "()"
    assert parse_cycles("(1 2 3 4)") == (1, 2, 3, 0)
    with pytest.raises(MalformedOracle):
        parse_cycles("(1 1 2)")
    with pytest.raises(MalformedOracle):
        parse_cycles("garbage")


def test_composition_convention():
    # products apply right factor first: (1 2)(2 3) = (1 2 3)
    a = parse_cycles("(1 2)", 4)
    b = parse_cycles("(2 3)", 4)
    assert cycle_notation(compose(a, b)) == "(1 2 3)"
    assert compose(a, invert(a)) == (0, 1, 2, 3)


def test_sym4_oracle_valid():
    oracle = sym_transposition_oracle(4)
    assert oracle.order == 24
    report = validate_generating_set(oracle)
    assert report.ok, report.failures()


def test_trivial_group_valid():
    oracle = GroupOracle.from_table(1, [[0]], 0, [0])
    assert validate_generating_set(oracle).ok


def test_single_transposition_fails_closure():
    ambient = [
        parse_cycles(f"({i} {j})", 4)
        for i in range(1, 4)
        for j in range(i + 1, 5)
    ]
    oracle = GroupOracle.from_permutations([parse_cycles("(1 2)", 4)], ambient=ambient)
    assert oracle.order == 24
    report = validate_generating_set(oracle)
    by_name = {c.name: c for c in report.checks}
    assert not by_name["monoid_generation"].passed
    closure = by_name["conjugation_closed"]
    assert not closure.passed
    # conjugating (1 2) by (1 3) gives (2 3), which is outside the set
    assert closure.witness == ("(1 2)", "(1 3)", "(2 3)")


def test_broken_table_rejected():
    with pytest.raises(MalformedOracle):
        GroupOracle.from_table(2, [[0, 1], [1, 5]], 0, [1])
    with pytest.raises(MalformedOracle):
        GroupOracle.from_table(2, [[0, 1]], 0, [1])


def test_nonassociative_table_detected():
    # "multiplication" with a deliberate associativity defect
    table = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    oracle = GroupOracle.from_table(3, table, 0, [1])
    report = validate_generating_set(oracle)
    by_name = {c.name: c for c in report.checks}
    assert not by_name["associative"].passed
    x, y, z = by_name["associative"].witness
    lhs = oracle.mul(oracle.mul(x, y), z)
    rhs = oracle.mul(x, oracle.mul(y, z))
    assert lhs != rhs


def test_length_bfs_sym4():
    oracle = sym_transposition_oracle(4)
    top = oracle.element_by_name("(1 2 3 4)")
    table = length_bfs(oracle, top)
    assert table.top_length == 3
    assert table.lengths[oracle.identity] == 0
    for a in oracle.generators:
        assert table.lengths[a] == 1


def test_length_bfs_identity_target():
    oracle = sym_transposition_oracle(3)
    assert length_bfs(oracle, oracle.identity).top_length == 0


def test_length_bfs_dihedral():
    oracle = dihedral8_oracle()
    top = oracle.element_by_name("(1 3)(2 4)")
    assert length_bfs(oracle, top).top_length == 2


def test_length_subadditive_on_stored_pairs():
    oracle = sym_transposition_oracle(4)
    top = oracle.element_by_name("(1 2 3 4)")
    lengths = length_bfs(oracle, top).lengths
    for x, lx in lengths.items():
        for y, ly in lengths.items():
            lxy = lengths.get(oracle.mul(x, y))
            if lxy is not None:
                assert lxy <= lx + ly


def test_target_unreachable():
    # Klein four-group inside S4; (1 2) is not generated
    gens = [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)]
    ambient = gens + [parse_cycles("(1 2)", 4)]
    oracle = GroupOracle.from_permutations(gens, ambient=ambient)
    with pytest.raises(TargetUnreachable):
        length_bfs(oracle, oracle.element_by_name("(1 2)"))


def test_build_interval_sym4(sym4):
    assert len(sym4) == 14
    ranks = sorted(sym4.ranks)
    assert ranks.count(1) == 6 and ranks.count(2) == 6
    assert validate_interval(sym4).ok
    assert len(maximal_chains(sym4)) == 16
    assert sym4.names[sym4.top] == "(1 2 3 4)"


def test_build_interval_single_generator():
    oracle = sym_transposition_oracle(3)
    a = oracle.generators[0]
    L = build_labeled_interval(oracle, a)
    assert len(L) == 2
    assert L.alphabet == (oracle.name(a),)


def test_element_cap():
    gens = [parse_cycles(f"({i} {j})", 5) for i in range(1, 5) for j in range(i + 1, 6)]
    with pytest.raises(ElementCapExceeded):
        GroupOracle.from_permutations(gens, max_elements=100)


def test_table_and_on_the_fly_agree():
    gens = [parse_cycles(s, 4) for s in ["(1 2)", "(2 3)", "(3 4)", "(1 3)", "(1 4)", "(2 4)"]]
    tabled = GroupOracle.from_permutations(gens)
    lazy = GroupOracle.from_permutations(gens, table_threshold=0)
    assert tabled._table is not None and lazy._table is None
    assert tabled.order == lazy.order
    rng = np.random.default_rng(0)
    for _ in range(500):
        a, b = rng.integers(0, tabled.order, 2)
        assert tabled.mul(int(a), int(b)) == lazy.mul(int(a), int(b))
    top = tabled.element_by_name("(1 2 3 4)")
    L1 = build_labeled_interval(tabled, top)
    L2 = build_labeled_interval(lazy, lazy.element_by_name("(1 2 3 4)"))
    assert L1.names == L2.names
    assert L1.edges == L2.edges


def test_interval_from_files():
    text = "\n".join(["(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)"])
    L = interval_from_files(text, "(1 2 3 4)")
    assert len(L) == 14


def test_table_json_roundtrip():
    oracle = GroupOracle.from_table_json(
        {"order": 2, "mul": [0, 1, 1, 0], "identity": 0, "generators": [1]}
    )
    assert validate_generating_set(oracle).ok
    L = build_labeled_interval(oracle, 1)
    assert len(L) == 2


def test_bottom_interval_isomorphism(sym4):
    # [x, top] is isomorphic, labels preserved, to [e, x^-1 top] built afresh
    from facposet.interval import subinterval

    g = sym4.group
    oracle = g.oracle
    top_elt = g.node_elements[sym4.top]
    for x in range(len(sym4)):
        rest = oracle.mul(oracle.inv(g.node_elements[x]), top_elt)
        fresh = build_labeled_interval(oracle, rest)
        sub = subinterval(sym4, x, sym4.top)
        assert sub.alphabet == fresh.alphabet
        assert {(sub.names[u], sub.names[v]) for u, v, _ in sub.edges} == {
            (
                oracle.name(oracle.mul(g.node_elements[x], fresh.group.node_elements[u])),
                oracle.name(oracle.mul(g.node_elements[x], fresh.group.node_elements[v])),
            )
            for u, v, _ in fresh.edges
        }
        relabel = {
            (sub.names[u], sub.names[v]): sub.alphabet[lab]
            for u, v, lab in sub.edges
        }
        for u, v, lab in fresh.edges:
            key = (
                oracle.name(oracle.mul(g.node_elements[x], fresh.group.node_elements[u])),
                oracle.name(oracle.mul(g.node_elements[x], fresh.group.node_elements[v])),
            )
            assert relabel[key] == fresh.alphabet[lab]


def test_conjugation_isomorphism():
    # intervals below conjugate elements are isomorphic labeled posets
    oracle = sym_transposition_oracle(4)
    top = oracle.element_by_name("(1 2 3 4)")
    other = oracle.element_by_name("(1 3 2 4)")
    L1 = build_labeled_interval(oracle, top)
    L2 = build_labeled_interval(oracle, other)
    g = next(
        h for h in range(oracle.order)
        if oracle.mul(oracle.mul(h, top), oracle.inv(h)) == other
    )

    def push(x):
        return oracle.mul(oracle.mul(g, x), oracle.inv(g))

    name_map = {
        L1.names[v]: oracle.name(push(L1.group.node_elements[v]))
        for v in range(len(L1))
    }
    edges2 = {(L2.names[u], L2.names[v]): L2.alphabet[lab] for u, v, lab in L2.edges}
    for u, v, lab in L1.edges:
        key = (name_map[L1.names[u]], name_map[L1.names[v]])
        assert edges2[key] == oracle.name(push(L1.group.label_elements[lab]))
