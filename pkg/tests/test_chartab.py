from __future__ import annotations

from fractions import Fraction

import pytest

from qsverify.chartab import (
    DataFormatError,
    NotACharacter,
    compare_maximal,
    decompose,
    inner_product,
    is_faithful,
    kernel_classes,
    lift_candidates,
    min_faithful_degree,
    min_nontrivial_degree,
    parse_table,
    power_class,
    restrict,
    restrict_to_cyclic,
    trivial_character,
    validate,
    validate_catalog,
    validate_fusion,
)
from qsverify.cyclo import parse_cyclotomic
from qsverify.repring import constituent_degrees, ext_power, sym_power


def a5_text(store) -> str:
    return (store.root / "tables" / "A5.ctbl").read_text()


def test_every_curated_table_validates(store):
    for label, tbl in store.tables.items():
        rep = validate(tbl)
        assert rep.ok, (label, [c.name for c in rep.failures()])


def test_every_fusion_and_catalog_validates(store):
    for fus in store.fusions.values():
        rep = validate_fusion(fus, store.table(fus.subgroup), store.table(fus.group))
        assert rep.ok, (fus.name, [c.name for c in rep.failures()])
    for cat in store.catalogs.values():
        assert validate_catalog(cat).ok


def test_parse_a5(store):
    tbl = store.table("A5")
    assert len(tbl.classes) == 5
    assert sorted(tbl.degrees) == [1, 3, 3, 4, 5]


def test_3a6_has_two_pairs_of_faithful_threes(store):
    tbl = store.table("3.A6")
    assert len(tbl.classes) == 17
    threes = [chi for chi in tbl.irreducibles if chi.degree == 3]
    assert threes and all(is_faithful(tbl, chi) for chi in threes)
    assert min_faithful_degree(tbl) == 3


def test_degree_sum_rejected(store):
    bad = a5_text(store).replace("char chi5a: 5,", "char chi5a: 6,")
    with pytest.raises(DataFormatError, match="squared degrees"):
        parse_table(bad)


def test_perturbed_value_breaks_orthogonality(store):
    bad = parse_table(a5_text(store).replace("char chi4a: 4, 0, 1,", "char chi4a: 4, 0, 2,"))
    rep = validate(bad)
    failed = {c.name: c for c in rep.failures()}
    assert "first orthogonality" in failed
    assert ("chi1a", "chi4a") in failed["first orthogonality"].offending


def test_bad_power_map_is_flagged(store):
    bad = parse_table(a5_text(store).replace("powermap 2: 1 1 3 5 4", "powermap 2: 1 1 3 3 4"))
    failed = {c.name for c in validate(bad).failures()}
    assert "power map order consistency" in failed


def test_power_class(store):
    tbl = store.table("A5")
    five_a, five_b = tbl.class_index("5A"), tbl.class_index("5B")
    assert power_class(tbl, five_a, 1) == five_a
    assert power_class(tbl, five_a, 5) == 0
    assert power_class(tbl, five_a, 2) == five_b
    # composite exponents go through the prime maps
    assert power_class(tbl, five_a, 4) == five_a


def test_orthonormality(store):
    for tbl in store.tables.values():
        irr = tbl.irreducibles
        for i, chi in enumerate(irr):
            for j in range(i, len(irr)):
                assert inner_product(tbl, chi, irr[j]) == (1 if i == j else 0)


def test_ext2_of_psl211_five_is_irreducible(store):
    tbl = store.table("PSL2(11)")
    v = tbl.character("chi5a")
    w = ext_power(tbl, v, 2)
    assert inner_product(tbl, w, w) == 1


def test_decompositions(store):
    tbl = store.table("A5")
    assert decompose(tbl, trivial_character(tbl)) == {"chi1a": 1}
    sp = store.table("Sp4(3)")
    s5 = sym_power(sp, sp.character("chi4a"), 5)
    assert constituent_degrees(sp, decompose(sp, s5)) == [20, 36]
    psl = store.table("PSL2(11)")
    s3 = sym_power(psl, psl.character("chi5a"), 3)
    mult = decompose(psl, s3)
    assert constituent_degrees(psl, mult) == [1, 10, 12, 12]
    assert all(m == 1 for m in mult.values())


def test_decompose_strict_rejects_virtual(store):
    tbl = store.table("A5")
    virtual = tbl.character("chi3a") - tbl.character("chi4a")
    with pytest.raises(NotACharacter):
        decompose(tbl, virtual)
    assert decompose(tbl, virtual, strict=False) == {"chi3a": 1, "chi4a": -1}


def test_restrictions(store):
    a7 = store.table("A7")
    fus = store.fusion("A7M2")
    sub = store.table(fus.subgroup)
    assert restrict(sub, fus, trivial_character(a7)).values == trivial_character(sub).values
    res = restrict(sub, fus, a7.character("chi6a"))
    assert "chi1a" not in decompose(sub, res)

    psl = store.table("PSL2(11)")
    fus = store.fusion("PSL2(11)M1")
    a5 = store.table(fus.subgroup)
    # the 5-dim stays irreducible on A5; the 3-dim constituents live in its exterior square
    assert decompose(a5, restrict(a5, fus, psl.character("chi5a"))) == {"chi5a": 1}
    res = restrict(a5, fus, ext_power(psl, psl.character("chi5a"), 2))
    mult = decompose(a5, res)
    threes = [k for k in mult if a5.character(k).degree == 3]
    assert threes
    golden = {parse_cyclotomic("-E(5)-E(5)^4"), parse_cyclotomic("-E(5)^2-E(5)^3")}
    for k in threes:
        assert a5.character(k).values[a5.class_index("5A")] in golden


def test_restrict_to_cyclic(store):
    tbl = store.table("2.A7")
    chi = tbl.character("chi4a")
    assert restrict_to_cyclic(tbl, 0, chi) == {0: 4}
    c = next(i for i, cl in enumerate(tbl.classes) if cl.order == 3 and chi.values[i] == -2)
    assert restrict_to_cyclic(tbl, c, chi)[0] == 0


def test_kernels_and_faithfulness(store):
    tbl = store.table("3.A6")
    inflated = tbl.character("chi5a")
    assert not is_faithful(tbl, inflated)
    assert tbl.center_classes <= kernel_classes(tbl, inflated)
    assert min_faithful_degree(store.table("2.A7")) == 4
    assert min_faithful_degree(store.table("SL2(7)")) == 4
    assert min_nontrivial_degree(store.table("A7")) == 6
    assert min_faithful_degree(store.table("A7")) == 6


def test_lift_candidates(store):
    t = store.table
    two = lift_candidates([t("A5"), t("2.A5")], 2)
    assert two and {g for g, _ in two} == {"2.A5"}
    assert any(g == "A5" for g, _ in lift_candidates([t("A5"), t("2.A5")], 3))
    three = lift_candidates([t("A6"), t("3.A6")], 3)
    assert three and {g for g, _ in three} == {"3.A6"}


def test_compare_maximal(store):
    cat = store.catalog("A6")
    rows = [("A5", 6), ("A5", 6), ("3^2:4", 10), ("S4", 15), ("S4", 15)]
    assert compare_maximal(cat, rows) == []
    assert compare_maximal(cat, rows[1:]) == ["A5 of index 6: catalog 2, expected 1"]


def test_inner_product_is_rational(store):
    tbl = store.table("3.A7")
    chi = tbl.irreducibles[-1]
    assert isinstance(inner_product(tbl, chi, chi), Fraction)
