"""Riemann-Hurwitz signatures for a group acting on a curve with rational quotient.

For G acting faithfully on a smooth curve of genus g with quotient P^1 the
branch data satisfy

    (2g - 2)/|G| + 2 = sum_r c_r (1 - 1/r)

with non-negative integers c_r, r running over orders of cyclic subgroups.
``feasible`` decides whether such c_r exist by exhaustive exact search.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable

__all__ = [
    "HurwitzInstance",
    "HurwitzSolution",
    "Infeasible",
    "PreconditionViolated",
    "lhs",
    "feasible",
    "brute_force",
    "hurwitz_bound",
    "genus_range_filter",
    "GenusVerdict",
    "parse_batch",
]


class PreconditionViolated(ValueError):
    """The genus is too large for the rational-quotient reduction to apply."""


@dataclass(frozen=True)
class HurwitzInstance:
    group_order: int
    cyclic_orders: tuple[int, ...]
    genus: int

    def __init__(self, group_order: int, cyclic_orders: Iterable[int], genus: int):
        if group_order < 1:
            raise ValueError("group order must be positive")
        if genus < 0:
            raise ValueError("genus must be non-negative")
        orders = tuple(sorted({int(r) for r in cyclic_orders if int(r) != 1}))
        if any(r < 1 for r in orders):
            raise ValueError("cyclic orders must be positive")
        bad = [r for r in orders if group_order % r]
        if bad:
            raise ValueError(f"orders {bad} do not divide {group_order}")
        object.__setattr__(self, "group_order", group_order)
        object.__setattr__(self, "cyclic_orders", orders)
        object.__setattr__(self, "genus", genus)


@dataclass(frozen=True)
class HurwitzSolution:
    coefficients: dict[int, int]

    def value(self) -> Fraction:
        return sum((c * (1 - Fraction(1, r)) for r, c in self.coefficients.items()), Fraction(0))

    def __str__(self) -> str:
        terms = [f"c{r}={c}" for r, c in sorted(self.coefficients.items()) if c]
        return " ".join(terms) or "empty"


@dataclass(frozen=True)
class Infeasible:
    nodes: int  # search nodes visited, for the certificate log

    def __str__(self) -> str:
        return "INFEASIBLE"


def lhs(inst: HurwitzInstance) -> Fraction:
    return Fraction(2 * inst.genus - 2, inst.group_order) + 2


def _check_precondition(inst: HurwitzInstance) -> None:
    if 4 * inst.genus >= inst.group_order:
        raise PreconditionViolated(
            f"genus {inst.genus} is not below |G|/4 = {Fraction(inst.group_order, 4)}"
        )


def feasible(inst: HurwitzInstance) -> HurwitzSolution | Infeasible:
    """Depth-first search over c_r, terms by descending weight 1 - 1/r.

    Coefficients are tried in increasing order, so the first solution found
    is the lexicographically smallest coefficient vector in that term order.
    """
    _check_precondition(inst)
    target = lhs(inst)
    orders = sorted(inst.cyclic_orders, reverse=True)
    weights = [1 - Fraction(1, r) for r in orders]
    nodes = 0
    chosen = [0] * len(orders)

    def search(i: int, rem: Fraction) -> bool:
        nonlocal nodes
        nodes += 1
        if rem == 0:
            for j in range(i, len(orders)):
                chosen[j] = 0
            return True
        if rem < 0 or i == len(orders):
            return False
        w = weights[i]
        # the smallest remaining weight is the last one; if even it is too
        # large for the remainder, nothing fits
        if rem < weights[-1]:
            return False
        for c in range(floor(rem / w) + 1):
            chosen[i] = c
            if search(i + 1, rem - c * w):
                return True
        return False

    if search(0, target):
        return HurwitzSolution({r: c for r, c in zip(orders, chosen)})
    return Infeasible(nodes)


def brute_force(inst: HurwitzInstance) -> HurwitzSolution | Infeasible:
    """Enumerate the whole box [0, 2*lhs]^orders; an oracle for ``feasible``."""
    _check_precondition(inst)
    target = lhs(inst)
    orders = sorted(inst.cyclic_orders, reverse=True)
    bound = floor(2 * target)
    weights = [1 - Fraction(1, r) for r in orders]
    count = 0
    for combo in itertools.product(range(bound + 1), repeat=len(orders)):
        count += 1
        if sum(c * w for c, w in zip(combo, weights)) == target:
            return HurwitzSolution(dict(zip(orders, combo)))
    return Infeasible(count)


def hurwitz_bound(group_order: int, genus: int) -> bool:
    """84(g - 1) >= |G|; false for g <= 1."""
    if genus <= 1:
        return False
    return 84 * (genus - 1) >= group_order


@dataclass(frozen=True)
class GenusVerdict:
    genus: int
    verdict: str  # "Eliminated(bound)", "Eliminated(signature)", "Survives", "PreconditionViolated"
    lhs: Fraction
    witness: HurwitzSolution | None = None

    @property
    def eliminated(self) -> bool:
        return self.verdict.startswith("Eliminated")

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "verdict": self.verdict,
            "lhs": str(self.lhs),
            "witness": None if self.witness is None else {str(r): c for r, c in sorted(self.witness.coefficients.items())},
        }


def genus_range_filter(
    group_order: int, g_low: int, g_high: int, orders: Iterable[int], bound_order: int | None = None
) -> list[GenusVerdict]:
    """Apply the automorphism bound, then signature feasibility, to each genus.

    ``bound_order`` is the order fed to 84(g - 1) >= |G| when it differs from
    the order used in the signature equation (default: the same).
    """
    if g_low > g_high:
        raise ValueError("empty genus range")
    orders = tuple(orders)
    bound_order = group_order if bound_order is None else bound_order
    out = []
    for g in range(g_low, g_high + 1):
        inst = HurwitzInstance(group_order, orders, g)
        if not hurwitz_bound(bound_order, g):
            out.append(GenusVerdict(g, "Eliminated(bound)", lhs(inst)))
            continue
        try:
            res = feasible(inst)
        except PreconditionViolated:
            out.append(GenusVerdict(g, "PreconditionViolated", lhs(inst)))
            continue
        if isinstance(res, Infeasible):
            out.append(GenusVerdict(g, "Eliminated(signature)", lhs(inst)))
        else:
            out.append(GenusVerdict(g, "Survives", lhs(inst), res))
    return out


def parse_batch(text: str) -> list[HurwitzInstance]:
    """Lines ``order genus r1,r2,...``; '#' starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'order genus r1,r2,...'")
        orders = [int(x) for x in parts[2].split(",") if x]
        out.append(HurwitzInstance(int(parts[0]), orders, int(parts[1])))
    return out
