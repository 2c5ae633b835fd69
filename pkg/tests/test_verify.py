from __future__ import annotations

import copy
from dataclasses import replace

import pytest

from pdpmkit.constructions import family_witness
from pdpmkit.matching import IntegrityError, max_pdpm
from pdpmkit.multigraph import remove_copies
from pdpmkit.verify import (
    PROOF_REPLAY_NOTE,
    all_multisets,
    certify_witness,
    g6_no4pdpm_replay,
    projection_suite,
    project_pdpm,
    splice_suite,
    verify_induction_projection,
    verify_lambda_formula,
    verify_petersen,
    verify_projection,
    verify_splice,
)
from pdpmkit.wiring import Wiring, WiringError, g6


def corrupted_wiring_dict():
    """Move one Q1-internal edge onto the hub vertices x1, y1; degrees are unchanged."""
    d = copy.deepcopy(Wiring.load().raw)
    d["edges"] += [["Q12.u1", "x1", 1], ["Q12.u2^1", "y1", 1]]
    d["remove"] = [["Q12.u1", "Q12.u2^1", 1], ["x1", "y1", 1]]
    return d


def test_multiset_counts():
    assert len(all_multisets(3)) == 84
    assert len(all_multisets(5)) == 462
    assert sum(1 for m in all_multisets(6) if sum(m) == 6) == 462


def test_petersen_checks_pass():
    assert all(c.passed for c in verify_petersen())


def test_lambda_formula_small():
    rep = verify_lambda_formula(3)
    assert rep.cases == 84 and rep.passed
    with pytest.raises(ValueError):
        verify_lambda_formula(13)


def test_splice_suite_shape():
    suite = splice_suite()
    assert len(suite) >= 20
    assert {c.r for c in suite} == set(range(4, 10))
    assert len({c.t for c in suite}) >= 5
    case = suite[0]
    g, h, _, _ = case.build()
    assert verify_splice(g, *case.uv, h, *case.xy, case.t, case.r).passed


def test_projection_of_empty_family():
    case = projection_suite()[0]
    _, _, gp, rec = case.build()
    assert project_pdpm(gp, (), rec) == ()
    with pytest.raises(ValueError):
        project_pdpm(gp, (), rec, "x")


def test_projection_rejects_mismatched_record():
    _, _, gp, rec = projection_suite()[0].build()
    fam = max_pdpm(gp).family
    with pytest.raises(IntegrityError):
        project_pdpm(gp, fam, replace(rec, g_n=99))


def test_projection_case():
    rep = verify_projection(projection_suite()[1])
    assert rep.passed and rep.families > 1


def test_induction_chain_projection():
    rep = verify_induction_projection(4, 2)
    assert rep.passed


def test_g6_replay_certifies(g6_build, q1_report):
    rep = g6_no4pdpm_replay(g6_build, q1_report)
    assert rep.certified
    d = rep.to_dict()
    assert d["statement"] == PROOF_REPLAY_NOTE
    for row in rep.steps[-1].detail:
        assert row["boundary_count_in_N"] % 2 == 1 and row["contradiction"]


def test_corrupted_wiring_refused_at_c(q1_report):
    build = g6(Wiring.from_dict(corrupted_wiring_dict()))
    rep = g6_no4pdpm_replay(build, q1_report)
    assert not rep.certified
    assert rep.refused_at == "c"


def test_wiring_validator_rejects_broken_regularity():
    d = copy.deepcopy(Wiring.load().raw)
    d["edges"].append(["x1", "y1", 1])
    with pytest.raises(WiringError):
        g6(Wiring.from_dict(d))
    d = copy.deepcopy(Wiring.load().raw)
    d["edges"].append(["x1", "nowhere", 1])
    with pytest.raises(WiringError):
        g6(Wiring.from_dict(d))
    with pytest.raises(WiringError):
        Wiring.from_dict({"hubs": []})


def test_g6_build_properties(g6_build):
    assert g6_build.g6.n == g6_build.g1.n + 4
    assert all(g6_build.g6.mu(*e.pair) >= 2 for e in g6_build.m6)


def test_certificate_deterministic_and_negative_control():
    g, m, prov = family_witness(4, 9)
    cert = certify_witness(g, m, prov)
    assert cert.passed
    assert cert.to_json() == certify_witness(*family_witness(4, 9)).to_json()
    e = min(m)
    bad = certify_witness(remove_copies(g, e.u, e.v, 1), m, prov)
    assert not bad.passed
    assert "regular" in [c.name for c in bad.properties if not c.passed]


def test_certificate_oracle_for_petersen_base():
    cert = certify_witness(*family_witness(4, 8))
    assert cert.passed and cert.oracle_results["max_pdpm"] == 6


def test_certificate_l3_needs_replay(g6_build, q1_report):
    g, m, prov = family_witness(3, 6, (g6_build.g6, g6_build.m6))
    assert not certify_witness(g, m, prov, g6_build).passed
    rep = g6_no4pdpm_replay(g6_build, q1_report)
    cert = certify_witness(g, m, prov, g6_build, rep)
    assert cert.passed and cert.oracle_results["g6"] == PROOF_REPLAY_NOTE


def test_certificate_smoke_search_is_inconclusive_not_found():
    g, m, prov = family_witness(4, 9)
    cert = certify_witness(g, m, prov, smoke_budget=20_000)
    assert cert.passed
    assert cert.oracle_results["smoke_search"]["verdict"] in ("infeasible", "inconclusive")
