from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdpmkit.connectivity import (
    UnsupportedInput,
    brute_force_cuts,
    edge_connectivity,
    gomory_hu,
    is_r_graph,
    max_flow,
    odd_edge_connectivity,
)
from pdpmkit.constructions import p_power
from pdpmkit.multigraph import Multigraph


def nx_graph(g: Multigraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for u, v, m in g.pairs():
        h.add_edge(u, v, capacity=m)
    return h


@st.composite
def connected_multigraphs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    edges = [(i, draw(st.integers(0, i - 1)), draw(st.integers(1, 3))) for i in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 3)), max_size=12))
    edges += [e for e in extra if e[0] != e[1]]
    return Multigraph.from_edges(n, edges)


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs())
def test_connectivity_matches_brute_force(g):
    lam, odd = brute_force_cuts(g)
    assert edge_connectivity(g).value == lam.value
    assert g.boundary_size(edge_connectivity(g).side) == lam.value
    if g.n % 2 == 0:
        got = odd_edge_connectivity(g)
        assert got.value == odd.value
        assert len(got.side) % 2 == 1


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs())
def test_gomory_hu_gives_every_pairwise_cut(g):
    tree = gomory_hu(g)
    h = nx_graph(g)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            expected = nx.minimum_cut_value(h, s, t)
            assert max_flow(g, s, t) == expected
            assert tree.min_cut(s, t) == expected


def test_disconnected_graph_has_zero_lambda():
    g = Multigraph.from_edges(4, [(0, 1, 2), (2, 3, 2)])
    assert edge_connectivity(g).value == 0


def test_odd_order_odd_lambda_unsupported():
    with pytest.raises(UnsupportedInput):
        odd_edge_connectivity(Multigraph.from_edges(3, [(0, 1), (1, 2)]))


def test_petersen_powers_against_networkx():
    rng = random.Random(7)
    for _ in range(10):
        m = tuple(rng.randint(0, 3) for _ in range(6))
        g = p_power(m)
        assert edge_connectivity(g).value == nx.stoer_wagner(nx.Graph(
            [(u, v, {"weight": c}) for u, v, c in g.pairs()]))[0]


def test_witness_shore_is_canonical():
    g = p_power((3, 0, 0, 0, 0, 0))
    cut = edge_connectivity(g)
    assert cut.value == 4
    assert 0 in cut.side
    assert edge_connectivity(g) == cut


def test_is_r_graph():
    assert is_r_graph(p_power((0,) * 6)) == 3
    # 4-regular, but the triangle {0, 1, 2} has only two boundary edges
    g = Multigraph.from_edges(
        6, [(0, 1, 2), (1, 2, 2), (0, 2), (3, 4, 2), (4, 5, 2), (3, 5), (0, 3), (2, 5)]
    )
    assert g.regularity() == 4
    assert odd_edge_connectivity(g).value == 2
    assert is_r_graph(g) is None
