from __future__ import annotations

import re
from fractions import Fraction

import pytest

from qsverify.permgrp import (
    CapExceeded,
    class_signature,
    conjugacy_classes,
    cycle_index,
    element_order_set,
    enumerate_group,
    match_table,
    parse_cycles,
    permutation_character,
    polya_invariant_count,
    power_map,
)


def a5():
    return enumerate_group([parse_cycles("(1,2,3,4,5)", 5), parse_cycles("(1,2,3)", 5)], 5)


def realized(store, stem):
    gen = store.perms[stem]
    return enumerate_group(gen.generators, gen.degree, name=gen.name)


def test_a5_closure_and_classes():
    g = a5()
    assert g.order == 60
    classes = conjugacy_classes(g)
    assert sorted((order, size) for _, size, order in classes) == [(1, 1), (2, 15), (3, 20), (5, 12), (5, 12)]
    assert element_order_set(g) == [1, 2, 3, 5]


def test_trivial_group():
    g = enumerate_group([], 4)
    assert g.order == 1
    assert len(conjugacy_classes(g)) == 1
    assert element_order_set(g) == [1]
    [term] = cycle_index(g)
    assert term.cycle_type == (1, 1, 1, 1) and term.weight == 1


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_group([parse_cycles("(1,2,3,4,5,6,7)", 7), parse_cycles("(1,2,3)", 7)], 7, cap=100)


def test_a7_by_closure(store):
    g = realized(store, "A7")
    assert g.order == 2520
    assert sorted(o for _, _, o in conjugacy_classes(g)) == [1, 2, 3, 3, 4, 5, 6, 7, 7]


def test_power_maps_of_a5():
    g = a5()
    classes = conjugacy_classes(g)
    sq = power_map(g, 2)
    fives = [i for i, (_, _, o) in enumerate(classes) if o == 5]
    assert sq[fives[0]] == fives[1] and sq[fives[1]] == fives[0]
    cube = power_map(g, 3)
    two = next(i for i, (_, _, o) in enumerate(classes) if o == 2)
    assert cube[two] == two
    ident = next(i for i, (_, _, o) in enumerate(classes) if o == 1)
    assert all(power_map(g, p)[ident] == ident for p in (2, 3, 5))


def test_cycle_index_of_a5():
    weights = {t.cycle_type: t.weight for t in cycle_index(a5())}
    assert weights == {
        (1, 1, 1, 1, 1): Fraction(1, 60),
        (1, 2, 2): Fraction(15, 60),
        (1, 1, 3): Fraction(20, 60),
        (5,): Fraction(24, 60),
    }


def test_polya_counts(store):
    a7 = cycle_index(realized(store, "A7"))
    assert polya_invariant_count(a7, 0) == 1
    assert polya_invariant_count(a7, 2) == 2
    assert polya_invariant_count(a7, 2) - polya_invariant_count(a7, 1) == 1
    assert polya_invariant_count(cycle_index(realized(store, "A6")), 1) == 1
    with pytest.raises(ValueError):
        polya_invariant_count(a7, -1)


def test_psp43_element_orders(store):
    assert element_order_set(realized(store, "PSp4_3")) == [1, 2, 3, 4, 5, 6, 9, 12]


def test_permutation_character_counts_fixed_points():
    g = a5()
    by_order = sorted(zip((o for _, _, o in conjugacy_classes(g)), permutation_character(g)))
    assert by_order == [(1, 5), (2, 1), (3, 2), (5, 0), (5, 0)]


@pytest.mark.parametrize("stem", ["A5", "A6", "A7", "PSL2_7", "PSL2_7-8", "PSL2_11", "PSL2_11-11", "2.A5", "SL2_7"])
def test_realizations_match_curated_tables(store, stem):
    g = realized(store, stem)
    tbl = store.table(re.sub(r"-\d+$", "", g.name))
    assert g.order == tbl.order
    sig = {}
    for c in tbl.classes:
        sig[(c.order, c.size)] = sig.get((c.order, c.size), 0) + 1
    assert dict(class_signature(g)) == sig
    sigma = match_table(g, tbl)
    assert sigma is not None and sorted(sigma) == list(range(len(tbl.classes)))
    for p, images in tbl.power_maps.items():
        ours = power_map(g, p)
        assert [sigma[j] for j in ours] == [images[sigma[i]] for i in range(len(ours))]


def test_match_rejects_wrong_table(store):
    assert match_table(a5(), store.table("A6")) is None
    assert match_table(realized(store, "PSL2_7"), store.table("SL2(7)")) is None
