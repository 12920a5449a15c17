from __future__ import annotations

from fractions import Fraction

import pytest
import yaml

from qsverify.casecheck import (
    CaseError,
    NonIntegral,
    Section5Params,
    a7_exclusion_checks,
    blichfeldt_consistency,
    curve_candidates,
    load_case,
    orbit_candidates,
    quotient_invariant_check,
    rr_h0,
    rr_m,
    run_case,
    subset_sums,
)
from qsverify.data import DataStore

RR = {
    "A7-23": (1, 6, 5, 20),
    "A7-P3": (4, 1, 3, 56),
    "PSp43-P3": (4, 1, 3, 56),
    "PSp43-B": (1, 4, 4, 15),
    "PSL211-K": (2, 3, 4, 34),
    "PSL211-g8": (1, 14, 9, 40),
}


@pytest.mark.parametrize("case_id", sorted(RR))
def test_riemann_roch(store, case_id):
    n, h3, m, h0 = RR[case_id]
    assert (rr_m(n, h3), rr_h0(n, h3)) == (m, h0)
    case = load_case(store, case_id)
    assert (case.n, case.h3, case.m, case.h0) == (n, h3, m, h0)


def test_riemann_roch_rejects_bad_input():
    with pytest.raises(ValueError):
        rr_h0(0, 6)
    with pytest.raises(NonIntegral):
        rr_m(1, 1)


def test_subset_sums():
    assert subset_sums([20, 36]) == {0, 20, 36, 56}
    assert subset_sums([]) == {0}


def test_orbit_candidates(store):
    assert [c.size for c in orbit_candidates(store, load_case(store, "A7-23"))] == [7, 15]
    assert orbit_candidates(store, load_case(store, "PSp43-B")) == []
    p3 = load_case(store, "PSp43-P3")
    assert [c.size for c in orbit_candidates(store, p3, [20, 36])] == [36]


def test_curve_candidates(store):
    case = load_case(store, "A7-P3")
    cands = curve_candidates(store, case)
    assert {c.r for c in cands} == {1, 7, 15}
    fifteen = [c for c in cands if c.r == 15]
    assert [(c.d, c.g) for c in fifteen] == [(1, 3)]
    # r = 15 with d = 1, g = 0 gives 90 > 56 and never appears
    assert all(c.value <= 56 for c in cands)

    k = load_case(store, "PSL211-K")
    big = [c for c in curve_candidates(store, k) if c.r in (11, 12)]
    assert big and all(c.d == 1 for c in big)
    assert all(c.r * 4 > 34 or c.g > 0 for c in big)

    b = load_case(store, "PSp43-B")
    cands = curve_candidates(store, b)
    assert {c.r for c in cands} == {1}
    assert max(c.d for c in cands) <= 4 and max(c.g for c in cands) <= 3


EXPECTED = {
    "A7-23": 3, "A7-P3": 3, "PSp43-P3": 2, "PSp43-B": 2, "PSL211-K": 3, "PSL211-g8": 4,
}


@pytest.mark.parametrize("case_id", sorted(EXPECTED))
def test_every_case_is_eliminated(store, case_id):
    rep = run_case(store, case_id)
    assert rep.verdict == "AllEliminated"
    assert rep.checks_ok, [c.name for c in rep.checks if not c.passed]
    assert len(rep.assumed_steps) == EXPECTED[case_id]
    doc = rep.as_dict()
    assert doc["assumed_count"] == EXPECTED[case_id]
    for cand in doc["orbits"] + doc["curves"]:
        assert cand["elimination"]["tag"] in ("Verified", "Assumed")


def test_expectations_file_agrees(store):
    shipped = store.expected_yaml("cases.yaml")
    for case_id, n in EXPECTED.items():
        assert shipped[case_id] == {"verdict": "AllEliminated", "assumed": n}


def test_a7_curve_branch_uses_the_bound(store):
    rep = run_case(store, "A7-23")
    curves = rep.curves
    assert {c.r for c in curves} == {1}
    assert max(c.d for c in curves) <= 6 and max(c.g for c in curves) <= 4
    assert all(c.eliminated_by.rule == "bound" for c in curves)


def test_a7p3_signature_discrepancy_is_reported(store):
    rep = run_case(store, "A7-P3")
    sig = [c for c in rep.curves if c.eliminated_by.rule == "signature"]
    assert sorted({c.g for c in sig}) == [31, 32, 33]
    assert any("5040" in d and "2520" in d for d in rep.discrepancies)
    feasible31 = [x for x in rep.cross_checks if x["g"] == 31]
    assert feasible31 and feasible31[0]["verdict"].startswith("FEASIBLE")
    assert feasible31[0]["lhs"] == "85/42"
    # no repeated cross-check records
    keys = [(x["g"], x["parameters"]) for x in rep.cross_checks]
    assert len(keys) == len(set(keys))


def test_a7p3_order_three_check(store):
    rep = run_case(store, "A7-P3")
    [chk] = [c for c in rep.checks if "order-3" in c.name]
    assert chk.passed


def test_psp43_orbit_36(store):
    rep = run_case(store, "PSp43-P3")
    assert [o.size for o in rep.orbits] == [36]
    assert rep.orbits[0].eliminated_by.tag == "Verified"


def test_psl211_g8_golden_ratio_branch(store):
    rep = run_case(store, "PSL211-g8")
    vals = [c for c in rep.checks if "E(5)" in str(c.expected)]
    assert vals and all(c.passed for c in vals)


def test_quotient_check(store):
    rep = quotient_invariant_check(store)
    assert rep.verdict == "AllEliminated"
    firsts = {i.name.split(":")[0]: i.observed for i in rep.items}
    assert firsts["A7-P3"]["first_invariant"] == 8
    assert firsts["PSp43-P3"]["counts"] == [0, 0, 0]
    assert firsts["A7-23"] == "odd"


def test_section5_params():
    assert (Section5Params(14).k_cubed, Section5Params(14).dim_2k) == (1, 3)
    assert (Section5Params(15).k_cubed, Section5Params(15).dim_2k) == (Fraction(3, 2), 4)
    with pytest.raises(ValueError):
        Section5Params(16)


def test_a7_exclusion(store):
    rep = a7_exclusion_checks(store)
    assert rep.ok, [i.name for i in rep.items if not i.passed]
    names = " ".join(i.name for i in rep.items)
    for tag in ("(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)"):
        assert tag in names


def test_blichfeldt(store):
    rep = blichfeldt_consistency(store)
    assert rep.ok


def _write_case(data_dir, name, mutate):
    path = data_dir / "cases" / name
    doc = yaml.safe_load(path.read_text())
    mutate(doc)
    path.write_text(yaml.safe_dump(doc, sort_keys=False))


def test_dangling_fusion_reference(data_copy):
    (data_copy / "fusions" / "A7M2.fus").unlink()
    store = DataStore.load(data_copy)
    with pytest.raises(CaseError, match="A7M2"):
        load_case(store, "A7-23")


def test_wrong_riemann_roch_value(data_copy):
    _write_case(data_copy, "A7-23.yaml", lambda s: s.update(h0=21))
    with pytest.raises(CaseError, match="h0"):
        load_case(DataStore.load(data_copy), "A7-23")


def test_unknown_case(store):
    with pytest.raises(CaseError):
        load_case(store, "no-such-case")


def test_dropping_a_rule_leaves_a_survivor(data_copy):
    _write_case(data_copy, "A7-23.yaml", lambda s: s["orbit_rules"].pop(15))
    rep = run_case(DataStore.load(data_copy), "A7-23")
    assert rep.verdict.startswith("Survivors") and "orbit 15" in rep.verdict
