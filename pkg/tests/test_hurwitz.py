"""Hurwitz moves, graph, orbits, local connectivity, label cycles."""

import pytest

from facposet.fixtures import generate_family, load_fixture
from facposet.groups import build_labeled_interval
from facposet.hurwitz import (
    hurwitz_graph,
    hurwitz_move,
    hurwitz_orbits,
    is_hurwitz_connected,
    is_locally_hurwitz_connected,
    rank2_label_cycles,
)
from facposet.interval import chain_word, maximal_chains, word_chain

BOOL3 = generate_family("boolean", 3).interval


def word_of(L, names):
    return tuple(L.label_id(n) for n in names)


def move_word(L, names, i, inverse=False):
    chain = word_chain(L, word_of(L, names))
    return L.word_names(chain_word(L, hurwitz_move(L, chain, i, inverse=inverse)))


def test_move_sym4(sym4):
    # (2 3)^-1 (1 2) (2 3) = (1 3)
    assert move_word(sym4, ["(1 2)", "(2 3)", "(3 4)"], 1) == ("(2 3)", "(1 3)", "(3 4)")


def test_move_fixed_point():
    L = load_fixture("ex44_rrrt").interval
    chain = word_chain(L, word_of(L, ["r", "r", "r", "t"]))
    assert hurwitz_move(L, chain, 1) == chain
    assert hurwitz_move(L, chain, 2) == chain


def test_move_boolean_swap():
    assert move_word(BOOL3, ["r", "s", "t"], 2) == ("r", "t", "s")


def test_move_inverse_roundtrip():
    for name in ["sym4_long_cycle", "ex44_rrrt", "ex46_rrt", "ex611_abb"]:
        L = load_fixture(name).interval
        for chain in maximal_chains(L):
            for i in range(1, L.rank):
                fwd = hurwitz_move(L, chain, i)
                assert hurwitz_move(L, fwd, i, inverse=True) == chain
                bwd = hurwitz_move(L, chain, i, inverse=True)
                assert hurwitz_move(L, bwd, i) == chain


def test_move_position_range(sym4):
    chain = maximal_chains(sym4)[0]
    with pytest.raises(ValueError):
        hurwitz_move(sym4, chain, 0)
    with pytest.raises(ValueError):
        hurwitz_move(sym4, chain, 3)


def test_graph_sym4(sym4):
    g = hurwitz_graph(sym4)
    assert len(g.chains) == 16
    assert len(g.edges) == 28
    assert len(g.components()) == 1


def test_graph_ex44():
    g = hurwitz_graph(load_fixture("ex44_rrrt").interval)
    assert len(g.chains) == 32
    assert len(g.components()) == 1
    assert g.loops  # fixed points exist but are not connectivity edges


def test_graph_rank1():
    L = generate_family("boolean", 1).interval
    g = hurwitz_graph(L)
    assert len(g.chains) == 1 and not g.edges


def test_orbits_dihedral():
    L = load_fixture("dihedral8_rt").interval
    orbits = hurwitz_orbits(L)
    words = sorted(
        tuple(sorted("".join(L.word_names(chain_word(L, c))) for c in orbit))
        for orbit in orbits
    )
    r, t = "(1 3)", "(2 4)"
    s, u = "(1 2)(3 4)", "(1 4)(2 3)"
    assert words == sorted(
        [tuple(sorted([r + t, t + r])), tuple(sorted([s + u, u + s]))]
    )


def test_orbits_ex513():
    orbits = hurwitz_orbits(load_fixture("ex513_rst").interval)
    assert sorted(len(o) for o in orbits) == [6, 6]


def test_locally_hurwitz_ex46():
    L = load_fixture("ex46_rrt").interval
    ok, witness = is_locally_hurwitz_connected(L)
    assert not ok and L.names[witness] == "rr"
    assert is_hurwitz_connected(L)  # connected despite the local failure


def test_locally_hurwitz_sym4(sym4):
    assert is_locally_hurwitz_connected(sym4) == (True, None)


def test_locally_hurwitz_rank1():
    assert is_locally_hurwitz_connected(generate_family("boolean", 1).interval)[0]


def test_label_cycles_sym4(sym4):
    g = sym4.node("(1 2 3)")
    cycles = rank2_label_cycles(sym4, g)
    assert [sym4.word_names(c) for c in cycles] == [("(1 2)", "(2 3)", "(1 3)")]
    g2 = sym4.node("(1 2)(3 4)")
    assert [sym4.word_names(c) for c in rank2_label_cycles(sym4, g2)] == [
        ("(1 2)", "(3 4)")
    ]


def test_label_cycles_dihedral():
    L = load_fixture("dihedral8_rt").interval
    cycles = rank2_label_cycles(L, L.top)
    assert sorted(len(c) for c in cycles) == [2, 2]


def test_braid_relations():
    from conftest import LABELED_INSTANCES

    for name, L in LABELED_INSTANCES:
        n = L.rank
        if n < 2 or len(L) > 60:
            continue
        for chain in maximal_chains(L):
            for i in range(1, n):
                for j in range(1, n):
                    if abs(i - j) > 1:
                        assert hurwitz_move(
                            L, hurwitz_move(L, chain, i), j
                        ) == hurwitz_move(L, hurwitz_move(L, chain, j), i)
                if i + 1 < n:
                    lhs = hurwitz_move(
                        L, hurwitz_move(L, hurwitz_move(L, chain, i), i + 1), i
                    )
                    rhs = hurwitz_move(
                        L, hurwitz_move(L, hurwitz_move(L, chain, i + 1), i), i + 1
                    )
                    assert lhs == rhs, (name, chain, i)


def test_hurwitz_edges_inside_chain_graph():
    from conftest import LABELED_INSTANCES
    from facposet.connectivity import chain_graph

    for name, L in LABELED_INSTANCES:
        if len(maximal_chains(L)) > 200:
            continue
        hg = hurwitz_graph(L)
        cg = chain_graph(L)
        assert hg.chains == cg.chains
        assert hg.edges <= cg.edges, name
        # every Hurwitz edge joins chains sharing exactly rank(P) elements
        for a, b in hg.edges:
            assert len(set(hg.chains[a]) & set(hg.chains[b])) == L.rank


def test_reverse_orbit_size_symmetry():
    # orbit of (a, b) in Red(ab) matches the orbit of (b, a) in Red(ba)
    from conftest import GROUP_BACKED

    for name, L in GROUP_BACKED:
        if L.rank < 2:
            continue
        oracle = L.group.oracle
        labels = L.group.label_elements
        for g in L.nodes_at_rank(2):
            data = L.rank2_data(L.bottom, g)
            for a_lab, b_lab in data.pairs.values():
                a, b = labels[a_lab], labels[b_lab]
                ba = oracle.mul(b, a)
                rev = build_labeled_interval(oracle, ba)
                rev_cycles = rank2_label_cycles(rev, rev.top)
                # each letter starts exactly one word of the element, so the
                # cycle through it is the orbit of (letter, partner)
                b_id = rev.alphabet.index(oracle.name(b))
                fwd_size = next(len(c) for c in data.cycles if a_lab in c)
                rev_size = next(len(c) for c in rev_cycles if b_id in c)
                assert fwd_size == rev_size, (name, L.names[g])
