"""Cross-module invariants checked over the full instance pool.

Exact combinatorial assertions: implications that are proved must never be
violated on any instance, for any order tried.
"""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ALL_INSTANCES, GROUP_BACKED, LABELED_INSTANCES, SMALL_LABELED
from facposet.connectivity import is_chain_connected, is_totally_chain_connected
from facposet.hurwitz import (
    hurwitz_orbits,
    is_hurwitz_connected,
    is_locally_hurwitz_connected,
)
from facposet.interval import maximal_chains
from facposet.orders import (
    enumerate_compatible_orders,
    is_compatible,
    is_el_labeling,
    is_totally_well_covered,
    rising_factorizations,
)

MEDIUM = [(n, L) for n, L in LABELED_INSTANCES if len(maximal_chains(L)) <= 130]


def sample_orders(L, rng_orders=6):
    """Deterministic sample: identity, reversal, enumerated compatible ones."""
    n = len(L.alphabet)
    base = [tuple(range(n)), tuple(reversed(range(n)))]
    if n <= 6:
        base += enumerate_compatible_orders(L)[:rng_orders]
    return list(dict.fromkeys(base))


def test_hurwitz_implies_chain_connected():
    for name, L in MEDIUM:
        if is_hurwitz_connected(L):
            assert is_chain_connected(L), name


def test_chain_and_local_implies_hurwitz():
    for name, L in MEDIUM:
        if is_chain_connected(L) and is_locally_hurwitz_connected(L)[0]:
            assert is_hurwitz_connected(L), name


def test_chain_and_compatible_implies_hurwitz():
    for name, L in SMALL_LABELED:
        if is_chain_connected(L) and enumerate_compatible_orders(L):
            assert is_hurwitz_connected(L), name


def test_compatible_implies_locally_hurwitz():
    for name, L in SMALL_LABELED:
        if enumerate_compatible_orders(L):
            assert is_locally_hurwitz_connected(L)[0], name


def test_el_iff_compatible_and_totally_well_covered():
    for name, L in SMALL_LABELED:
        for order in sample_orders(L):
            el = is_el_labeling(L, order)[0]
            compat = is_compatible(L, order)[0]
            twc = is_totally_well_covered(L, order)[0]
            assert el == (compat and twc), (name, order)


def test_totally_well_covered_implies_totally_chain_connected():
    for name, L in SMALL_LABELED:
        for order in sample_orders(L):
            if is_totally_well_covered(L, order)[0]:
                assert is_totally_chain_connected(L)[0], (name, order)


def test_main_theorem_consequences():
    # compatible + totally well-covered force all three connectivities
    from facposet.shelling import search_shelling

    for name, L in SMALL_LABELED:
        if len(maximal_chains(L)) > 40:
            continue
        for order in sample_orders(L):
            if is_compatible(L, order)[0] and is_totally_well_covered(L, order)[0]:
                assert is_chain_connected(L), name
                assert is_hurwitz_connected(L), name
                assert search_shelling(L).status == "shellable", name


def test_rank2_compatible_iff_hurwitz():
    for name, L in SMALL_LABELED:
        if L.rank != 2:
            continue
        exists = bool(enumerate_compatible_orders(L))
        assert exists == is_hurwitz_connected(L), name


def test_orbit_count_lower_bounds_rising():
    for name, L in MEDIUM:
        orbits = len(hurwitz_orbits(L))
        for order in sample_orders(L):
            assert orbits <= len(rising_factorizations(L, order)), (name, order)


@settings(max_examples=25, deadline=None, derandomize=True)
@given(data=st.data())
def test_orbit_bound_random_orders(data):
    name, L = data.draw(st.sampled_from(MEDIUM))
    order = tuple(data.draw(st.permutations(range(len(L.alphabet)))))
    assert len(hurwitz_orbits(L)) <= len(rising_factorizations(L, order))


@settings(max_examples=25, deadline=None, derandomize=True)
@given(data=st.data())
def test_el_equivalence_random_orders(data):
    name, L = data.draw(st.sampled_from(SMALL_LABELED))
    order = tuple(data.draw(st.permutations(range(len(L.alphabet)))))
    el = is_el_labeling(L, order)[0]
    assert el == (
        is_compatible(L, order)[0] and is_totally_well_covered(L, order)[0]
    )


def test_duality_on_group_backed():
    from facposet.interval import duality_check

    for name, L in GROUP_BACKED:
        ok, witness = duality_check(L)
        assert ok, (name, witness)
        # the canonical anti-automorphism squares to an order automorphism
        g = L.group
        oracle = g.oracle
        elt_to_node = {e: v for v, e in enumerate(g.node_elements)}
        top = g.node_elements[L.top]
        bot = g.node_elements[L.bottom]

        def kappa(v):
            return elt_to_node[
                oracle.mul(bot, oracle.mul(oracle.inv(g.node_elements[v]), top))
            ]

        square = {v: kappa(kappa(v)) for v in range(len(L))}
        assert sorted(square.values()) == list(range(len(L)))
        for u, v, _ in L.edges:
            assert (square[u], square[v]) in L.edge_label


def test_rank_profile_palindromic_on_group_backed():
    for name, L in GROUP_BACKED:
        counts = [len(L.nodes_at_rank(r)) for r in range(L.rank + 1)]
        assert counts == counts[::-1], name


def test_validators_pass_everywhere():
    from facposet.interval import validate_interval

    for name, L in ALL_INSTANCES:
        assert validate_interval(L).ok, name
