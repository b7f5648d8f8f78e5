"""Chain graphs and (total) chain-connectivity."""

from facposet.connectivity import (
    chain_graph,
    is_chain_connected,
    is_totally_chain_connected,
)
from facposet.fixtures import generate_family, load_fixture
from facposet.interval import maximal_chains


def degree_sequence(graph):
    deg = [0] * len(graph.chains)
    for a, b in graph.edges:
        deg[a] += 1
        deg[b] += 1
    return sorted(deg)


def test_boolean3_chain_graph_is_hexagon():
    g = chain_graph(generate_family("boolean", 3).interval)
    assert len(g.chains) == 6
    assert len(g.edges) == 6
    assert degree_sequence(g) == [2] * 6
    assert len(g.components()) == 1


def test_ex513_two_hexagons():
    g = chain_graph(load_fixture("ex513_rst").interval)
    assert len(g.chains) == 12
    assert degree_sequence(g) == [2] * 12
    comps = g.components()
    assert sorted(len(c) for c in comps) == [6, 6]


def test_two_node_chain_graph():
    g = chain_graph(generate_family("boolean", 1).interval)
    assert len(g.chains) == 1 and not g.edges


def test_is_chain_connected():
    assert is_chain_connected(load_fixture("dihedral8_rt").interval)
    assert not is_chain_connected(load_fixture("ex513_rst").interval)
    assert is_chain_connected(load_fixture("sym4_long_cycle").interval)


def test_totally_ex44_witness():
    L = load_fixture("ex44_rrrt").interval
    ok, witness = is_totally_chain_connected(L)
    assert not ok
    assert (L.names[witness[0]], L.names[witness[1]]) == ("id", "rrr")


def test_totally_dunce_hat():
    assert is_totally_chain_connected(load_fixture("dunce_hat").interval) == (
        True,
        None,
    )


def test_totally_boolean():
    assert is_totally_chain_connected(generate_family("boolean", 3).interval)[0]
    assert is_totally_chain_connected(generate_family("boolean", 5).interval)[0]


def test_totally_all_instances_consistent():
    # the chain-graph method and the proper-part method are compared inside;
    # an InternalCheckFailed here would mean they disagreed
    from conftest import ALL_INSTANCES

    for name, L in ALL_INSTANCES:
        if len(maximal_chains(L)) <= 200:
            is_totally_chain_connected(L)
