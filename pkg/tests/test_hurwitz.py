from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsverify.hurwitz import (
    HurwitzInstance,
    HurwitzSolution,
    Infeasible,
    PreconditionViolated,
    brute_force,
    feasible,
    genus_range_filter,
    hurwitz_bound,
    lhs,
    parse_batch,
)

CASE2 = (2, 3, 4, 5, 6, 7, 8, 10, 12, 14)


@pytest.mark.parametrize("g, value", [(31, Fraction(169, 84)), (32, Fraction(5071, 2520)), (33, Fraction(634, 315))])
def test_case2_lhs_and_infeasibility(g, value):
    inst = HurwitzInstance(5040, CASE2, g)
    assert lhs(inst) == value
    assert isinstance(feasible(inst), Infeasible)


def test_instance_normalizes_orders():
    inst = HurwitzInstance(60, [5, 1, 2, 3, 2], 0)
    assert inst.cyclic_orders == (2, 3, 5)
    with pytest.raises(ValueError):
        HurwitzInstance(60, [7], 0)
    with pytest.raises(ValueError):
        HurwitzInstance(60, [2], -1)


def test_small_feasible():
    res = feasible(HurwitzInstance(2, [2], 0))
    assert isinstance(res, HurwitzSolution)
    assert res.coefficients == {2: 2}
    # A5 acting on P^1: signature (2, 3, 5)
    res = feasible(HurwitzInstance(60, [2, 3, 5], 0))
    assert res.coefficients == {5: 1, 3: 1, 2: 1}


def test_psl211_genus_nine():
    inst = HurwitzInstance(660, [2, 3, 5, 6, 11], 9)
    assert lhs(inst) == Fraction(334, 165)
    assert isinstance(feasible(inst), Infeasible)


def test_precondition():
    with pytest.raises(PreconditionViolated):
        feasible(HurwitzInstance(60, [2, 3, 5], 15))


def test_bound():
    assert not hurwitz_bound(2520, 4)
    assert hurwitz_bound(660, 9)
    assert hurwitz_bound(84, 2)
    assert not hurwitz_bound(84, 1)


def test_range_filter():
    # 84 * 32 < 5040, so with one order throughout the bound already removes g <= 33
    assert all(v.verdict == "Eliminated(bound)" for v in genus_range_filter(5040, 31, 33, CASE2))
    # bound with |A7| = 2520, signature with 5040
    split = genus_range_filter(5040, 31, 33, CASE2, bound_order=2520)
    assert [v.verdict for v in split] == ["Eliminated(signature)"] * 3
    assert [v.lhs for v in split] == [Fraction(169, 84), Fraction(5071, 2520), Fraction(634, 315)]
    assert all(v.verdict == "Eliminated(signature)" for v in genus_range_filter(660, 9, 13, [2, 3, 5, 6, 11]))
    assert all(v.verdict == "Eliminated(bound)" for v in genus_range_filter(2520, 0, 4, [2, 3, 4, 5, 6, 7]))
    with pytest.raises(ValueError):
        genus_range_filter(60, 3, 2, [2])


def test_a7_order_admits_genus_31():
    # with the true order of A7 the genus-31 equation has a solution
    res = feasible(HurwitzInstance(2520, [2, 3, 4, 5, 6, 7], 31))
    assert isinstance(res, HurwitzSolution)
    assert res.value() == Fraction(85, 42)


def test_batch_file(store):
    insts = parse_batch(store.expected_path("hurwitz_case2.txt").read_text())
    assert [i.genus for i in insts] == [31, 32, 33]
    assert all(isinstance(feasible(i), Infeasible) for i in insts)
    with pytest.raises(ValueError):
        parse_batch("5040 31\n")


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([60, 120, 168, 336, 360, 660, 720, 1320, 2520, 5040]).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.sampled_from([d for d in range(2, 15) if n % d == 0]), min_size=1, max_size=6, unique=True),
            st.integers(0, (n - 1) // 4),
        )
    )
)
def test_solver_agrees_with_brute_force(params):
    n, orders, g = params
    inst = HurwitzInstance(n, orders, g)
    fast, slow = feasible(inst), brute_force(inst)
    assert isinstance(fast, Infeasible) == isinstance(slow, Infeasible)
    if isinstance(fast, HurwitzSolution):
        assert fast.value() == lhs(inst)
