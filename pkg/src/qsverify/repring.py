"""Tensor, symmetric and exterior powers, and invariant counting.

Symmetric and exterior powers are evaluated class by class from the power
sums chi(g^k) with the Newton recursions

    s_d = (1/d) sum_{k=1..d} chi(g^k) s_{d-k}
    e_d = (1/d) sum_{k=1..d} (-1)^(k-1) chi(g^k) e_{d-k}

so only character values and power maps are needed.  The number of
degree-d invariants of a representation is the multiplicity of the trivial
character in S^d.
"""
from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

from .chartab import (
    CharacterTable,
    LabelMismatch,
    VirtualCharacter,
    center_faithful,
    constituent_degrees,
    decompose,
    is_faithful,
    is_trivial,
    power_class,
)
from .cyclo import Cyclotomic, cyc_sum

__all__ = [
    "MAX_DEGREE",
    "PowerCache",
    "InvariantRow",
    "tensor",
    "sym_power",
    "sym_power_closed_form",
    "ext_power",
    "sym_powers",
    "ext_powers",
    "invariant_count",
    "invariant_table",
    "table_characters",
    "load_expected_rows",
    "regen_tables",
    "sym_square_decompositions_3A7",
]

MAX_DEGREE = 10


class PowerCache:
    """chi(g^k) for every class and k = 1..d_max."""

    def __init__(self, tbl: CharacterTable, phi: VirtualCharacter, d_max: int):
        if phi.table != tbl.group:
            raise LabelMismatch(f"{phi.table} character used with {tbl.group} table")
        self.table = tbl.group
        self.d_max = d_max
        self.per_class = [
            [phi.values[power_class(tbl, c, k)] for k in range(1, d_max + 1)] for c in range(len(tbl.classes))
        ]

    def __getitem__(self, c: int) -> list[Cyclotomic]:
        return self.per_class[c]


def tensor(phi: VirtualCharacter, psi: VirtualCharacter) -> VirtualCharacter:
    if phi.table != psi.table:
        raise LabelMismatch(f"tensor of characters on {phi.table} and {psi.table}")
    return phi * psi


def _newton(power_sums: Sequence[Cyclotomic], d_max: int, signed: bool) -> list[Cyclotomic]:
    out = [Cyclotomic.rational(1)]
    for d in range(1, d_max + 1):
        terms = []
        for k in range(1, d + 1):
            t = power_sums[k - 1] * out[d - k]
            terms.append(-t if signed and k % 2 == 0 else t)
        out.append(cyc_sum(terms) / d)
    return out


def _powers(tbl: CharacterTable, phi: VirtualCharacter, d_max: int, signed: bool) -> list[VirtualCharacter]:
    cache = PowerCache(tbl, phi, d_max)
    per_class = [_newton(cache[c], d_max, signed) for c in range(len(tbl.classes))]
    return [VirtualCharacter(tbl.group, tuple(col[d] for col in per_class)) for d in range(d_max + 1)]


def sym_powers(tbl: CharacterTable, phi: VirtualCharacter, d_max: int) -> list[VirtualCharacter]:
    """[S^0 phi, S^1 phi, ..., S^d_max phi]."""
    return _powers(tbl, phi, d_max, signed=False)


def ext_powers(tbl: CharacterTable, phi: VirtualCharacter, d_max: int) -> list[VirtualCharacter]:
    """[L^0 phi, ..., L^d_max phi]."""
    return _powers(tbl, phi, d_max, signed=True)


def sym_power(tbl: CharacterTable, phi: VirtualCharacter, d: int) -> VirtualCharacter:
    return sym_powers(tbl, phi, d)[d]


def ext_power(tbl: CharacterTable, phi: VirtualCharacter, d: int) -> VirtualCharacter:
    return ext_powers(tbl, phi, d)[d]


def _partitions(d: int, largest: int | None = None):
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    for k in range(min(d, largest), 0, -1):
        for rest in _partitions(d - k, k):
            yield (k,) + rest


def sym_power_closed_form(tbl: CharacterTable, phi: VirtualCharacter, d: int) -> VirtualCharacter:
    """S^d phi from the cycle index of S_d: (1/d!) sum |C_lambda| prod phi(g^lambda_i).

    Independent of the Newton recursion; used to cross-check it.
    """
    terms = []
    for lam in _partitions(d):
        centralizer = 1
        for k, m in Counter(lam).items():
            centralizer *= k**m * factorial(m)
        terms.append((Fraction(1, centralizer), lam))
    values = []
    for c in range(len(tbl.classes)):
        col = []
        for weight, lam in terms:
            prod = Cyclotomic.rational(weight)
            for k in lam:
                prod = prod * phi.values[power_class(tbl, c, k)]
            col.append(prod)
        values.append(cyc_sum(col))
    return VirtualCharacter(tbl.group, tuple(values))


def _trivial_multiplicity(tbl: CharacterTable, chi: VirtualCharacter) -> int:
    s = cyc_sum(c.size * v for c, v in zip(tbl.classes, chi.values)).to_rational() / tbl.order
    if s.denominator != 1 or s < 0:
        raise ArithmeticError(f"invariant count {s} is not a non-negative integer")
    return int(s)


def invariant_count(tbl: CharacterTable, phi: VirtualCharacter, d: int) -> int:
    return _trivial_multiplicity(tbl, sym_power(tbl, phi, d))


@dataclass(frozen=True)
class InvariantRow:
    group: str
    character: str
    dimension: int
    counts: tuple[int, ...]


def invariant_table(tbl: CharacterTable, phi: VirtualCharacter, d_max: int = MAX_DEGREE) -> InvariantRow:
    sym = sym_powers(tbl, phi, d_max)
    counts = tuple(_trivial_multiplicity(tbl, s) for s in sym[1:])
    return InvariantRow(tbl.group, phi.label or "?", int(phi.degree), counts)


def table_characters(tbl: CharacterTable) -> list[VirtualCharacter]:
    """Irreducibles that give rows: nontrivial, kernel meeting the center trivially."""
    return [chi for chi in tbl.irreducibles if not is_trivial(chi) and center_faithful(tbl, chi)]


# -- regeneration against the expected rows ---------------------------------


def load_expected_rows(source: str | Path) -> dict[tuple[str, int], list[tuple[int, ...]]]:
    """Read the expected CSV: (group, dim) -> expected rows, in file order."""
    text = Path(source).read_text(encoding="utf-8")
    body = "\n".join(line for line in text.splitlines() if line.strip() and not line.startswith("#"))
    rows: dict[tuple[str, int], list[tuple[int, ...]]] = defaultdict(list)
    for rec in csv.DictReader(io.StringIO(body)):
        counts = tuple(int(rec[f"d{i}"]) for i in range(1, MAX_DEGREE + 1))
        rows[(rec["group"], int(rec["dim"]))].append(counts)
    return dict(rows)


@dataclass
class RowComparison:
    group: str
    dim: int
    status: str  # MATCH, MISMATCH, UNLISTED, MISSING
    expected: list[tuple[int, ...]]
    computed: dict[tuple[int, ...], list[str]]  # row -> characters realizing it
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "dim": self.dim,
            "status": self.status,
            "expected": [list(r) for r in self.expected],
            "computed": [{"row": list(r), "characters": chars} for r, chars in sorted(self.computed.items())],
            "note": self.note,
        }


@dataclass
class TablesReport:
    rows: list[RowComparison] = field(default_factory=list)

    @property
    def mismatches(self) -> list[RowComparison]:
        return [r for r in self.rows if r.status in ("MISMATCH", "MISSING")]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "matched": sum(r.status == "MATCH" for r in self.rows),
            "mismatched": len(self.mismatches),
            "rows": [r.as_dict() for r in self.rows],
        }


def compare_rows(
    group: str,
    dim: int,
    expected: list[tuple[int, ...]],
    computed: dict[tuple[int, ...], list[str]],
) -> RowComparison:
    """Compare the distinct computed rows with the expected rows for one (group, dim).

    The expected tables list each distinct invariant vector once, so a row shared
    by several characters (Galois or outer-automorphism twins) appears once.
    """
    if not expected:
        return RowComparison(group, dim, "UNLISTED", [], computed)
    if not computed:
        return RowComparison(group, dim, "MISSING", expected, computed, "no character of this degree")
    exp_set = set(expected)
    notes = []
    if len(exp_set) != len(expected):
        notes.append("expected rows repeat")
    shared = {r: c for r, c in computed.items() if len(c) > 1}
    if shared:
        notes.append("; ".join(f"{'/'.join(c)} share a row" for c in shared.values()))
    status = "MATCH" if exp_set == set(computed) else "MISMATCH"
    return RowComparison(group, dim, status, expected, computed, "; ".join(notes))


def regen_tables(
    tables: dict[str, CharacterTable],
    expected: dict[tuple[str, int], list[tuple[int, ...]]],
    group: str | None = None,
    dim: int | None = None,
    d_max: int = MAX_DEGREE,
) -> TablesReport:
    """Recompute every row for the groups named in expected and compare."""
    groups = sorted({g for g, _ in expected}, key=lambda g: _group_order(expected, g))
    if group is not None:
        if group not in tables:
            raise KeyError(f"unknown group {group!r}")
        groups = [group]
    report = TablesReport()
    for g in groups:
        tbl = tables[g]
        computed: dict[int, dict[tuple[int, ...], list[str]]] = defaultdict(dict)
        broken: dict[int, list[str]] = defaultdict(list)
        for chi in table_characters(tbl):
            deg = int(chi.degree)
            if dim is not None and deg != dim:
                continue
            try:
                row = invariant_table(tbl, chi, d_max)
            except ArithmeticError as exc:  # corrupted table data
                broken[deg].append(f"{chi.label}: {exc}")
                continue
            computed[deg].setdefault(row.counts, []).append(chi.label)
        dims = set(computed) | {dd for gg, dd in expected if gg == g}
        if dim is not None:
            dims = {dim}
        for dd in sorted(dims):
            exp = [r[:d_max] for r in expected.get((g, dd), [])]
            cmp = compare_rows(g, dd, exp, computed.get(dd, {}))
            if broken.get(dd):
                cmp.status = "MISMATCH"
                cmp.note = "; ".join(filter(None, [cmp.note, *broken[dd]]))
            report.rows.append(cmp)
    return report


def _group_order(expected, g) -> int:
    return [gg for gg, _ in expected].index(g)


# -- 3.A7 quadrics ------------------------------------------------------------


@dataclass
class DecompositionCheck:
    name: str
    passed: bool
    observed: list[int]
    expected: list[int]
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "observed": self.observed,
                "expected": self.expected, "detail": self.detail}


def sym_square_decompositions_3A7(tbl: CharacterTable) -> list[DecompositionCheck]:
    """S^2 of each 6-dim irreducible of 3.A7, plus its invariant cubic count."""
    if tbl.group != "3.A7":
        raise LabelMismatch(f"expected the 3.A7 table, got {tbl.group}")
    out = []
    for chi in tbl.irreducibles:
        if chi.degree != 6:
            continue
        faithful = is_faithful(tbl, chi)
        dual = chi.conjugate()
        s2 = sym_power(tbl, dual, 2)
        mult = decompose(tbl, s2)
        degs = constituent_degrees(tbl, mult)
        expected = [6, 15] if faithful else [1, 6, 14]
        detail = "constituents " + ", ".join(f"{k}x{v}" if v > 1 else k for k, v in mult.items())
        ok = degs == expected
        if faithful:
            # the 6-dim constituent of S^2 U^dual is U itself, and the 15 is faithful
            six = [k for k in mult if tbl.character(k).degree == 6]
            fifteen = [k for k in mult if tbl.character(k).degree == 15]
            ok = ok and six == [chi.label] and all(is_faithful(tbl, tbl.character(k)) for k in fifteen)
        kind = "faithful" if faithful else "non-faithful"
        out.append(DecompositionCheck(f"S^2 of dual {chi.label} ({kind})", ok, degs, expected, detail))
        cubics = invariant_count(tbl, chi, 3)
        out.append(DecompositionCheck(f"invariant cubics of {chi.label}", cubics == 1, [cubics], [1]))
    return out
