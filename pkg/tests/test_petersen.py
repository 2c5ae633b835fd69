from __future__ import annotations

from itertools import combinations

import pytest

from pdpmkit.multigraph import GraphError
from pdpmkit.petersen import build_catalog, petersen, u, v


def test_petersen_is_cubic_on_ten_vertices():
    g = petersen()
    assert g.n == 10 and g.edge_count() == 15 and g.regularity() == 3


def test_catalog_structure():
    cat = build_catalog()
    assert len(cat.matchings) == 6
    for e in cat.graph.mult:
        assert sum(e in m for m in cat.matchings) == 2
    for a, b in combinations(cat.matchings, 2):
        assert len(a & b) == 1


def test_spoke_indexing():
    cat = build_catalog()
    assert cat.matchings[0] == frozenset((u(i), v(i)) for i in range(1, 6))
    for i in range(1, 6):
        assert cat.common_edge(0, i) == (u(i), v(i))
    assert cat.matchings[1] == frozenset({(0, 5), (1, 2), (3, 4), (6, 8), (7, 9)})


def test_pair_of_inverts_common_edge():
    cat = build_catalog()
    for (i, j), e in cat.common.items():
        assert cat.pair_of(e) == (i, j)
    with pytest.raises(GraphError):
        cat.pair_of((0, 2))
    with pytest.raises(GraphError):
        cat.common_edge(1, 1)
