from __future__ import annotations

import pytest

from pdpmkit.connectivity import edge_connectivity, is_r_graph, odd_edge_connectivity
from pdpmkit.constructions import (
    PreconditionError,
    base_g,
    expand3,
    family_witness,
    induction_step,
    p_next,
    p_power,
    q1,
    splice,
    trivial_range_counts,
)
from pdpmkit.matching import pdpm_oracle
from pdpmkit.multigraph import relabel
from pdpmkit.petersen import build_catalog, u, v


def test_p_power_multiplicities():
    cat = build_catalog()
    for m in [(0,) * 6, (2, 1, 1, 1, 0, 0), (1, 2, 3, 0, 1, 0)]:
        g = p_power(m)
        assert g.regularity() == 3 + sum(m)
        for (i, j), e in cat.common.items():
            assert g.mult[e] == 1 + m[i] + m[j]


def test_base_g():
    g, m = base_g(4)
    assert g.regularity() == 8
    assert edge_connectivity(g).value == 8 and odd_edge_connectivity(g).value == 8
    assert g.mu(u(1), v(1)) == 4 and g.mu(u(4), v(4)) == 3
    assert all(g.mu(*e.pair) >= 3 for e in m)
    with pytest.raises(PreconditionError):
        base_g(3)


@pytest.mark.parametrize("l,expected", [(4, 6), (5, 9), (6, 12)])
def test_base_graphs_are_class_two(l, expected):
    assert pdpm_oracle((l - 2, l - 3, l - 3, 1, 0, 0)).max_k == expected == 3 * l - 6


def test_p_next():
    g = p_next(8, 4)
    assert g == p_power((2, 2, 2, 0, 0, 0))
    assert g.mu(u(1), v(1)) == 5 and edge_connectivity(g).value == 8
    assert p_next(6, 3).mu(u(1), v(1)) == 4
    with pytest.raises(PreconditionError):
        p_next(7, 4)


def test_splice_counts_and_connectivity():
    g = p_power((2, 0, 0, 0, 0, 0))
    h = relabel(p_power((1, 1, 0, 0, 0, 0)), [f"{x}'" for x in p_power((0,) * 6).labels])
    gp, rec = splice(g, u(1), v(1), h, u(1), v(1), 2, 5)
    assert gp.n == 18 and gp.regularity() == 5
    assert edge_connectivity(gp).value == 4 and is_r_graph(gp) == 5
    assert rec.merged == (u(1), v(1))
    assert gp.mu(u(1), v(1)) == (3 - 2) + (3 - 3)
    with pytest.raises(PreconditionError):
        splice(g, u(1), v(1), h, u(1), v(1), 4, 5)


def test_splice_petersen_with_itself_needs_heavier_bundle():
    # a single-edge bundle can lose t = 1 copy on one side only, never r - t = 2 on the other
    p = p_power((0,) * 6)
    with pytest.raises(PreconditionError):
        splice(p, u(1), v(1), relabel(p, [x + "'" for x in p.labels]), u(1), v(1), 1, 3)
    h = relabel(p_power((1, 0, 0, 0, 0, 0)), [x + "'" for x in p.labels])
    with pytest.raises(PreconditionError):
        splice(p, u(1), v(1), h, u(1), v(1), 1, 4)


def test_splice_label_clash():
    p = p_power((0,) * 6)
    with pytest.raises(PreconditionError):
        splice(p, 0, 5, p, 0, 5, 1, 3)


def test_expand3():
    g = p_power((1, 0, 0, 0, 0, 0))
    nbrs = dict(g.neighbors(0))
    first = {w: c for w, c in list(nbrs.items())[:1]}
    h = expand3(g, 0, first)
    assert h.n == 11 and h.labels[0] == "u1'" and h.labels[10] == "u1''"
    assert h.mu(0, 10) == 3
    assert h.degree(0) == 3 + sum(first.values())
    with pytest.raises(PreconditionError):
        expand3(g, 0, {1: 5})


def test_q1_shape():
    g = q1()
    assert g.n == 19
    degs = {g.labels[i]: d for i, d in enumerate(g.degrees())}
    assert degs["v1^1"] == degs["v1^2"] == 3
    assert all(d == 6 for lab, d in degs.items() if lab not in ("v1^1", "v1^2"))


def test_induction_step_sizes_and_properties():
    g, m = base_g(4)
    h, m2, step = induction_step(g, m, 4, 8)
    assert h.n == 50 == 5 * g.n
    assert h.regularity() == 9
    assert odd_edge_connectivity(h).value == 9 and edge_connectivity(h).value >= 8
    assert all(h.mu(*e.pair) >= 3 for e in m2)
    assert len(step.splices) == 5
    assert any(lab.endswith("^1/9") for lab in h.labels)


def test_induction_step_preconditions():
    g, m = base_g(4)
    with pytest.raises(PreconditionError):
        induction_step(g, m, 4, 7)
    with pytest.raises(PreconditionError):
        induction_step(g, m, 5, 8)


def test_family_witness_dispatch():
    g, _, prov = family_witness(4, 8)
    assert g.n == 10 and prov.steps == []
    _, _, prov = family_witness(4, 10)
    assert len(prov.steps) == 2
    g, _, prov = family_witness(5, 10)
    assert prov.base == "trivial-range" and g.regularity() == 10
    with pytest.raises(PreconditionError):
        family_witness(2, 5)
    with pytest.raises(PreconditionError):
        family_witness(3, 7)
    with pytest.raises(PreconditionError):
        family_witness(4, 7)


def test_trivial_range_counts_are_valid():
    for l, r in [(5, 10), (6, 12), (6, 13)]:
        m = trivial_range_counts(l, r)
        g = p_power(m)
        assert g.regularity() == r
        assert edge_connectivity(g).value >= 2 * l
        assert pdpm_oracle(m).max_k <= 3 * l - 6
