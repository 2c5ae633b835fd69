from __future__ import annotations

from itertools import combinations, product

import pytest

from pdpmkit.constructions import p_power
from pdpmkit.matching import (
    BudgetExceeded,
    count_pm,
    enumerate_pm,
    is_class1,
    is_pdpm,
    is_perfect_matching,
    iter_families,
    lemma22_check,
    max_pdpm,
    pdpm_oracle,
    petersen_multiset,
    project_family,
    realize,
)
from pdpmkit.multigraph import EdgeCopy, GraphError, Multigraph
from pdpmkit.petersen import build_catalog


def brute_max_disjoint(g: Multigraph) -> int:
    """Independent oracle: every copy-level matching, then exhaustive packing."""
    copies = list(g.copies())
    pms = []
    n = g.n

    def pm_rec(covered, chosen):
        if len(covered) == n:
            pms.append(frozenset(chosen))
            return
        x = min(set(range(n)) - covered)
        for e in copies:
            if x in e.pair:
                y = e.v if e.u == x else e.u
                if y not in covered:
                    pm_rec(covered | {x, y}, chosen + [e])

    pm_rec(set(), [])
    pms = sorted(set(pms), key=sorted)
    best = 0

    def pack(start, used, k):
        nonlocal best
        best = max(best, k)
        for j in range(start, len(pms)):
            if not (pms[j] & used):
                pack(j + 1, used | pms[j], k + 1)

    pack(0, frozenset(), 0)
    return best


def test_perfect_matching_predicates():
    g = Multigraph.from_edges(4, [(0, 1, 2), (2, 3), (0, 3), (1, 2)])
    m1 = [EdgeCopy(0, 1, 0), EdgeCopy(2, 3, 0)]
    m2 = [EdgeCopy(0, 1, 1), EdgeCopy(2, 3, 0)]
    assert is_perfect_matching(g, m1)
    assert not is_perfect_matching(g, [EdgeCopy(0, 1, 2), EdgeCopy(2, 3, 0)])
    assert not is_pdpm(g, [m1, m2])
    assert is_pdpm(g, [m1, [EdgeCopy(0, 3, 0), EdgeCopy(1, 2, 0)]])


def test_counts_on_petersen_plus_m0():
    g = p_power((1, 0, 0, 0, 0, 0))
    assert count_pm(g) == 6
    assert count_pm(g, "copies") == 42
    assert len(enumerate_pm(g, "copies")) == 42
    with pytest.raises(BudgetExceeded):
        enumerate_pm(g, "copies", cap=10)
    with pytest.raises(BudgetExceeded):
        count_pm(g, budget=3)


def test_odd_order_has_no_perfect_matching():
    g = Multigraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert enumerate_pm(g) == []
    with pytest.raises(GraphError):
        max_pdpm(g)


@pytest.mark.parametrize("m", [(0,) * 6, (1, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0), (2, 0, 0, 0, 0, 0)])
def test_max_pdpm_matches_brute_force(m):
    g = p_power(m)
    res = max_pdpm(g)
    assert res.exact
    assert res.k == brute_max_disjoint(g) == pdpm_oracle(m).max_k
    assert is_pdpm(g, res.family)


def test_max_pdpm_small_multigraphs_against_brute_force():
    graphs = [
        Multigraph.from_edges(4, [(0, 1, 2), (2, 3, 2), (0, 3), (1, 2)]),
        Multigraph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
        Multigraph.from_edges(4, [(0, 1, 3), (2, 3, 3)]),
    ]
    for g in graphs:
        assert max_pdpm(g).k == brute_max_disjoint(g)


def test_k_target_and_budget():
    g = p_power((2, 1, 1, 1, 0, 0))
    assert max_pdpm(g, k_target=6).feasible is True
    assert max_pdpm(g, k_target=7).feasible is False
    res = max_pdpm(g, k_target=7, budget=5)
    assert res.status == "budget_exhausted"
    assert res.feasible is None


def test_all_optimal_families_are_distinct_multisets():
    g = p_power((1, 0, 0, 0, 0, 0))
    res = max_pdpm(g, all_optimal=True)
    keys = {tuple(sorted(tuple(sorted(e.pair for e in m)) for m in f)) for f in res.optimal}
    assert len(keys) == len(res.optimal) > 0
    assert all(len(f) == res.k for f in res.optimal)


def test_realize_hands_out_copies_in_order():
    fam = realize([((0, 1), (2, 3)), ((0, 1), (2, 3))])
    assert fam[1] == frozenset({EdgeCopy(0, 1, 1), EdgeCopy(2, 3, 1)})


def oracle_by_definition(m):
    cat = build_catalog()
    best = 0
    for n in product(*(range(0, 1 + m[i] + max(m) + 1) for i in range(6))):
        if all(n[i] + n[j] <= 1 + m[i] + m[j] for i, j in combinations(range(6), 2)):
            best = max(best, sum(n))
    assert len(cat.common) == 15
    return best


@pytest.mark.parametrize("m,expected", [((2, 1, 1, 1, 0, 0), 6), ((3, 2, 2, 1, 0, 0), 9), ((4, 3, 3, 1, 0, 0), 12)])
def test_oracle_base_values(m, expected):
    assert pdpm_oracle(m).max_k == expected == oracle_by_definition(m)


def test_oracle_rejects_bad_counts():
    with pytest.raises(ValueError):
        pdpm_oracle((1, 2, 3))
    with pytest.raises(ValueError):
        pdpm_oracle((1, -1, 0, 0, 0, 0))


def test_petersen_multiset_recovery():
    for m in [(0,) * 6, (2, 1, 1, 1, 0, 0), (0, 3, 0, 1, 2, 5)]:
        assert petersen_multiset(p_power(m)) == m
    assert petersen_multiset(Multigraph.from_edges(2, [(0, 1)])) is None


def test_project_family_counts_indices():
    g = p_power((1, 1, 0, 0, 0, 0))
    res = max_pdpm(g)
    counts = project_family(build_catalog(), res.family)
    assert sum(counts) == res.k


def test_iter_families_counts_and_budget():
    g = p_power((0,) * 6)
    fams = list(iter_families(g))
    # empty family plus the six single matchings; any two Petersen matchings share an edge
    assert len(fams) == 7
    with pytest.raises(BudgetExceeded):
        list(iter_families(p_power((1, 1, 0, 0, 0, 0)), budget=3))


def test_over_index_direct_small():
    rep = lemma22_check((1, 0, 0, 0, 0, 0), direct=True)
    assert rep.passed and rep.families_checked > 0


def test_class():
    assert is_class1(p_power((0,) * 6)) == "class2"
    assert is_class1(Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])) == "class1"
