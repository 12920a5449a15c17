"""Orbit and curve eliminations for the six Fano cases, plus two global checks.

Each case is a YAML file under ``data/cases``.  It names the group, its
linearizing cover, the Fano index n, H^3, the character of H^0(O_X(H)) and a
list of elimination rules.  The pipeline is:

1. m and h0 from Riemann-Roch; side computations (values, decompositions).
2. Orbit sizes s with m < s <= h0 from the subgroup catalog, restricted to
   subrepresentation dimensions when the decomposition of H^0(O_X((n+1)H))
   is known.  Each is eliminated by its registered rule.
3. Curve data (r, d, g) satisfying rd <= H^3 n^2, 2g - 2 <= nd and
   0 < r((n+1)d - g + 1) <= h0.  r = 1 goes through the automorphism bound
   and the signature solver, r > 1 through the registered rules.

Geometric inputs that no character computation can check are premises,
listed in ``data/cases/premises.yaml``.  A report records which premises an
elimination leans on and tags the decisive step Verified (computed here) or
Assumed (the premise itself does the work).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import yaml

from . import hurwitz
from .chartab import (
    CharacterTable,
    NotACharacter,
    VirtualCharacter,
    constituent_degrees,
    decompose,
    inner_product,
    is_faithful,
    is_trivial,
    kernel_classes,
    min_nontrivial_degree,
    restrict,
    restrict_to_cyclic,
    trivial_character,
)
from .cyclo import parse_cyclotomic
from .data import DataStore
from .repring import ext_power, invariant_count, sym_power, sym_power_closed_form, sym_square_decompositions_3A7, tensor

__all__ = [
    "NonIntegral",
    "CaseError",
    "FanoCase",
    "OrbitCandidate",
    "CurveCandidate",
    "CaseReport",
    "Section5Params",
    "SideCheck",
    "rr_h0",
    "rr_m",
    "subset_sums",
    "load_case",
    "orbit_candidates",
    "eliminate_orbit",
    "curve_candidates",
    "run_case",
    "quotient_invariant_check",
    "a7_exclusion_checks",
    "blichfeldt_consistency",
]

VERIFIED = "Verified"
ASSUMED = "Assumed"


class NonIntegral(ValueError):
    """A Riemann-Roch value that should be an integer is not."""


class CaseError(ValueError):
    """A case file refers to something that does not exist or is malformed."""


# -- Riemann-Roch ------------------------------------------------------------


def _check_args(n: int, h3: int) -> None:
    if n < 1 or h3 < 1:
        raise ValueError("need n >= 1 and H^3 >= 1")


def rr_h0(n: int, h3: int) -> int:
    """h^0(O_X((n+1)H)) for a Fano threefold of index n with H^3 = h3."""
    _check_args(n, h3)
    v = Fraction((n + 1) * (2 * n + 1) * (3 * n + 2), 12) * h3 + Fraction(2 * n + 2, n) + 1
    if v.denominator != 1:
        raise NonIntegral(f"h0 = {v} for n={n}, H^3={h3}")
    return int(v)


def rr_m(n: int, h3: int) -> int:
    """m with h^0(O_X(H)) = m + 1."""
    _check_args(n, h3)
    v = Fraction((n + 1) * (n + 2), 12) * h3 + Fraction(2, n)
    if v.denominator != 1:
        raise NonIntegral(f"m = {v} for n={n}, H^3={h3}")
    return int(v)


def subset_sums(degrees: Iterable[int]) -> set[int]:
    """Totals of all sub-multisets (the empty one gives 0)."""
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


# -- side computations -------------------------------------------------------


@dataclass
class SideCheck:
    name: str
    passed: bool
    observed: Any
    expected: Any
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "observed": _jsonable(self.observed),
            "expected": _jsonable(self.expected),
            "detail": self.detail,
        }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


# -- case definition ---------------------------------------------------------


@dataclass
class FanoCase:
    case_id: str
    group: str
    cover: str
    n: int
    h3: int
    section: Any  # function expression for the character of H^0(O_X(H))
    m: int
    h0: int
    orbit_lower_bound: int
    known_decomposition: dict | None
    hurwitz: dict
    orbit_rules: dict[int, list[dict]]
    curve_rules: list[dict]
    checks: list[dict]
    base_premises: list[str]
    description: str = ""

    def inputs(self) -> dict:
        return {
            "group": self.group,
            "cover": self.cover,
            "n": self.n,
            "H3": self.h3,
            "m": self.m,
            "h0": self.h0,
            "orbit_lower_bound": self.orbit_lower_bound,
            "section": _describe(self.section),
        }


def load_case(store: DataStore, case_id: str) -> FanoCase:
    try:
        raw = store.cases[case_id]
    except KeyError:
        raise CaseError(f"unknown case {case_id!r}; known: {', '.join(sorted(store.cases))}") from None
    src = raw.get("_source", case_id)
    try:
        n, h3 = int(raw["fano_index"]), int(raw["h_cubed"])
        group, cover = raw["group"], raw["cover"]
    except KeyError as exc:
        raise CaseError(f"{src}: missing key {exc}") from None
    m, h0 = rr_m(n, h3), rr_h0(n, h3)
    for key, value in (("m", m), ("h0", h0)):
        if key in raw and int(raw[key]) != value:
            raise CaseError(f"{src}: stated {key}={raw[key]} but Riemann-Roch gives {value}")
    for label in (group, cover):
        store.table(label)
    store.catalog(group)
    orbit_rules = {int(k): list(v) for k, v in (raw.get("orbit_rules") or {}).items()}
    case = FanoCase(
        case_id=case_id,
        group=group,
        cover=cover,
        n=n,
        h3=h3,
        section=raw["section"],
        m=m,
        h0=h0,
        orbit_lower_bound=int(raw.get("orbit_lower_bound", m)),
        known_decomposition=raw.get("known_decomposition"),
        hurwitz=raw.get("hurwitz") or {},
        orbit_rules=orbit_rules,
        curve_rules=list(raw.get("curve_rules") or []),
        checks=list(raw.get("checks") or []),
        base_premises=list(raw.get("premises") or []),
        description=raw.get("description", ""),
    )
    _check_references(store, case, src)
    return case


def _fusion_names(rule: dict) -> list[str]:
    return list(rule.get("fusions") or [])


def _check_references(store: DataStore, case: FanoCase, src: str) -> None:
    rules = [r for rs in case.orbit_rules.values() for r in rs] + case.curve_rules
    for rule in rules:
        for name in _fusion_names(rule):
            if name not in store.fusions:
                raise CaseError(f"{src}: fusion {name!r} is not in the data directory")
            fus = store.fusions[name]
            if fus.group != case.cover:
                raise CaseError(f"{src}: fusion {name!r} maps into {fus.group}, not {case.cover}")
            if fus.subgroup not in store.tables:
                raise CaseError(f"{src}: no table for {fus.subgroup} (needed by {name})")
    premises = _premises(store)
    used = set(case.base_premises) | {r["premise"] for r in rules if "premise" in r}
    missing = sorted(used - set(premises))
    if missing:
        raise CaseError(f"{src}: unknown premises {missing}")
    # the character of H^0(O_X(H)) must have dimension m + 1
    _, sec = evaluate(store, case, "section")
    if sec.degree != case.m + 1:
        raise CaseError(f"{src}: section character has degree {sec.degree}, expected m + 1 = {case.m + 1}")


def _premises(store: DataStore) -> dict[str, str]:
    path = store.root / "cases" / "premises.yaml"
    if not path.is_file():
        return {}
    return yaml.safe_load(path.read_text(encoding="utf-8")) or {}


# -- class function expressions ----------------------------------------------
#
#   section                      the case's character of H^0(O_X(H))
#   {char: chi5a, table: G}      an irreducible (table defaults to the cover)
#   {sym: k, of: F}              k-th symmetric power
#   {ext: k, of: F}              k-th exterior power
#   {dual: F}                    complex conjugate
#   {tensor: [F, G]}             product
#   {diff: [F, G]}               F - G
#   {restrict: FUSION, of: F}    restriction along a fusion map
#   {trivial: G}                 trivial character


def evaluate(store: DataStore, case: FanoCase | None, expr) -> tuple[CharacterTable, VirtualCharacter]:
    if expr == "section":
        if case is None:
            raise CaseError("'section' used outside a case")
        return evaluate(store, case, case.section)
    if not isinstance(expr, dict) or len(expr) == 0:
        raise CaseError(f"cannot evaluate {expr!r}")
    default = case.cover if case is not None else None
    if "char" in expr:
        tbl = store.table(expr.get("table", default))
        return tbl, tbl.character(expr["char"])
    if "trivial" in expr:
        tbl = store.table(expr["trivial"] or default)
        return tbl, trivial_character(tbl)
    if "sym" in expr:
        tbl, phi = evaluate(store, case, expr["of"])
        return tbl, sym_power(tbl, phi, int(expr["sym"]))
    if "ext" in expr:
        tbl, phi = evaluate(store, case, expr["of"])
        return tbl, ext_power(tbl, phi, int(expr["ext"]))
    if "dual" in expr:
        tbl, phi = evaluate(store, case, expr["dual"])
        return tbl, phi.conjugate()
    if "tensor" in expr:
        (tbl, a), (_, b) = (evaluate(store, case, e) for e in expr["tensor"])
        return tbl, tensor(a, b)
    if "diff" in expr:
        (tbl, a), (_, b) = (evaluate(store, case, e) for e in expr["diff"])
        return tbl, a - b
    if "restrict" in expr:
        _, phi = evaluate(store, case, expr["of"])
        fus = store.fusion(expr["restrict"])
        sub = store.table(fus.subgroup)
        return sub, restrict(sub, fus, phi)
    raise CaseError(f"unknown expression {expr!r}")


def _describe(expr) -> str:
    if isinstance(expr, str):
        return expr
    if "char" in expr:
        return expr["char"] if "table" not in expr else f"{expr['table']}:{expr['char']}"
    if "trivial" in expr:
        return "1"
    if "sym" in expr:
        return f"S^{expr['sym']}({_describe(expr['of'])})"
    if "ext" in expr:
        return f"L^{expr['ext']}({_describe(expr['of'])})"
    if "dual" in expr:
        return f"dual({_describe(expr['dual'])})"
    if "tensor" in expr:
        return " x ".join(_describe(e) for e in expr["tensor"])
    if "diff" in expr:
        a, b = expr["diff"]
        return f"{_describe(a)} - {_describe(b)}"
    if "restrict" in expr:
        return f"Res[{expr['restrict']}]({_describe(expr['of'])})"
    return repr(expr)


# -- side checks -------------------------------------------------------------


def _values_at(tbl: CharacterTable, phi: VirtualCharacter, labels: Sequence[str]) -> list[str]:
    return [str(phi.values[tbl.class_index(lab)]) for lab in labels]


def _expected_values(raw) -> list[str]:
    return [str(parse_cyclotomic(str(v))) for v in raw]


def run_check(store: DataStore, case: FanoCase | None, chk: dict) -> SideCheck:
    kind = chk["kind"]
    name = chk.get("name", kind)
    fn = chk.get("function", "section")
    if kind == "value":
        tbl, phi = evaluate(store, case, fn)
        labels = chk["classes"]
        got = _values_at(tbl, phi, labels)
        exp = _expected_values(chk["expected"])
        return SideCheck(name, got == exp, dict(zip(labels, got)), dict(zip(labels, exp)), _describe(fn))
    if kind == "irreducible":
        tbl, phi = evaluate(store, case, fn)
        ip = inner_product(tbl, phi, phi)
        return SideCheck(name, ip == 1, ip, 1, f"<{_describe(fn)}, {_describe(fn)}>")
    if kind == "decomposition":
        tbl, phi = evaluate(store, case, fn)
        mult = decompose(tbl, phi)
        degs = constituent_degrees(tbl, mult)
        ok = degs == sorted(chk["degrees"])
        if chk.get("all_faithful"):
            ok = ok and all(is_faithful(tbl, tbl.character(k)) for k in mult)
        if chk.get("distinct"):
            ok = ok and all(v == 1 for v in mult.values())
        detail = " + ".join(f"{v}*{k}" if v > 1 else k for k, v in mult.items())
        return SideCheck(name, ok, degs, sorted(chk["degrees"]), detail)
    if kind == "invariants":
        tbl, phi = evaluate(store, case, fn)
        d = int(chk["degree"])
        got = invariant_count(tbl, phi, d)
        return SideCheck(name, got == int(chk["expected"]), got, int(chk["expected"]), f"degree {d}")
    if kind == "cyclic_trivial":
        tbl, phi = evaluate(store, case, fn)
        c = tbl.class_index(chk["class"])
        mults = restrict_to_cyclic(tbl, c, phi)
        got = mults.get(0, 0)
        val = str(phi.values[c])
        ok = got == int(chk["expected"])
        if "value" in chk:
            ok = ok and val == _expected_values([chk["value"]])[0]
        return SideCheck(name, ok, got, int(chk["expected"]), f"value at {chk['class']} is {val}")
    if kind == "closed_form":
        tbl, phi = evaluate(store, case, fn)
        d = int(chk["degree"])
        a, b = sym_power(tbl, phi, d), sym_power_closed_form(tbl, phi, d)
        return SideCheck(name, a == b, "equal" if a == b else "differ", "equal", f"S^{d} by recursion vs cycle index")
    if kind == "constituent_values":
        tbl, phi = evaluate(store, case, fn)
        mult = decompose(tbl, phi)
        deg = int(chk["degree"])
        lab = chk["class"]
        got = sorted({str(tbl.character(k).values[tbl.class_index(lab)]) for k in mult if tbl.character(k).degree == deg})
        exp = sorted(set(_expected_values(chk["expected"])))
        return SideCheck(name, got == exp, got, exp, f"degree-{deg} constituents at {lab}")
    if kind == "vanishing":
        # every nontrivial irreducible of degree <= bound vanishes on the classes
        tbl = store.table(chk.get("table", case.cover if case else None))
        bound = int(chk["max_degree"])
        labels = chk["classes"]
        bad = [
            chi.label
            for chi in tbl.irreducibles
            if not is_trivial(chi) and chi.degree <= bound and any(chi.values[tbl.class_index(x)] != 0 for x in labels)
        ]
        return SideCheck(name, not bad, bad, [], f"degree <= {bound} at {', '.join(labels)}")
    raise CaseError(f"unknown check kind {kind!r}")


# -- candidates --------------------------------------------------------------


@dataclass
class Elimination:
    rule: str
    tag: str  # Verified / Assumed
    premises: list[str]
    detail: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "tag": self.tag, "premises": list(self.premises), "detail": self.detail}


@dataclass
class OrbitCandidate:
    size: int
    stabilizer: str
    stabilizer_order: int
    eliminated_by: Elimination | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.eliminated_by is None:
            return "Survives"
        return f"Eliminated({self.eliminated_by.rule})"

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "stabilizer": self.stabilizer,
            "stabilizer_order": self.stabilizer_order,
            "verdict": self.verdict,
            "elimination": None if self.eliminated_by is None else self.eliminated_by.as_dict(),
            "notes": list(self.notes),
        }


@dataclass
class CurveCandidate:
    r: int
    d: int
    g: int
    value: int  # r((n+1)d - g + 1)
    eliminated_by: Elimination | None = None
    chain: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.eliminated_by is None:
            return "Survives"
        return f"Eliminated({self.eliminated_by.rule})"

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "g": self.g,
            "value": self.value,
            "verdict": self.verdict,
            "elimination": None if self.eliminated_by is None else self.eliminated_by.as_dict(),
            "chain": list(self.chain),
        }


def _known_degrees(store: DataStore, case: FanoCase) -> tuple[list[int] | None, SideCheck | None]:
    kd = case.known_decomposition
    if not kd:
        return None, None
    tbl, phi = evaluate(store, case, kd["function"])
    try:
        degs = constituent_degrees(tbl, decompose(tbl, phi))
    except NotACharacter as exc:
        return None, SideCheck("known decomposition", False, str(exc), kd.get("degrees"))
    expected = sorted(kd.get("degrees", degs))
    chk = SideCheck(
        f"decomposition of H^0(O_X({case.n + 1}H))",
        degs == expected and sum(degs) == case.h0,
        degs,
        expected,
        f"{_describe(kd['function'])}; total must be h0 = {case.h0}",
    )
    return degs, chk


def orbit_candidates(store: DataStore, case: FanoCase, known: list[int] | None = None) -> list[OrbitCandidate]:
    cat = store.catalog(case.group)
    if case.h0 > cat.index_cap:
        raise CaseError(f"catalog for {case.group} stops at index {cat.index_cap} < h0 = {case.h0}")
    allowed = subset_sums(known) if known is not None else None
    out = []
    for s in cat.indices():
        if not case.orbit_lower_bound < s <= case.h0:
            continue
        if allowed is not None and s not in allowed:
            continue
        entries = cat.at_index(s)
        structure = " | ".join(f"{e.structure} (x{e.class_count})" if e.class_count > 1 else e.structure for e in entries)
        out.append(OrbitCandidate(s, structure, cat.order // s))
    return out


def _permutation_character(sub: CharacterTable, fus, tbl: CharacterTable) -> tuple[Fraction, ...]:
    vals = []
    for j, cls in enumerate(tbl.classes):
        inside = sum(sub.classes[i].size for i, k in enumerate(fus.map) if k == j)
        vals.append(Fraction(tbl.order * inside, sub.order * cls.size))
    return tuple(vals)


def _coverage(store: DataStore, case: FanoCase, index: int, names: list[str], notes: list[str]) -> str | None:
    """None if the fusions account for every class of subgroups of this index."""
    cat = store.catalog(case.group)
    classes = sum(e.class_count for e in cat.at_index(index))
    if len(set(names)) != len(names):
        return "a fusion is listed twice"
    if len(names) != classes:
        return f"{len(names)} fusion(s) for {classes} class(es) of index {index}"
    tbl = store.table(case.cover)
    maps = []
    for name in names:
        fus = store.fusion(name)
        sub = store.table(fus.subgroup)
        if sub.order * index != tbl.order:
            return f"{name}: |{sub.group}| * {index} != |{tbl.group}|"
        perm = _permutation_character(sub, fus, tbl)
        if perm[0] != index or any(v.denominator != 1 or v < 0 for v in perm):
            return f"{name}: induced trivial character is not a permutation character of degree {index}"
        maps.append((sub.group, fus.map))
    # classes swapped by an outer automorphism can have the same class
    # fusion; restrictions along them then agree
    if len(set(maps)) != len(maps):
        notes.append(f"{', '.join(names)} coincide at class level, so their restrictions agree")
    return None


def _linear_constituents(sub: CharacterTable, res: VirtualCharacter) -> list[str]:
    mult = decompose(sub, res)
    return [k for k in mult if sub.character(k).degree == 1]


def _faithful_three(sub: CharacterTable, res: VirtualCharacter) -> bool:
    mult = decompose(sub, res)
    items = sorted(mult.items())
    for counts in itertools.product(*[range(m + 1) for _, m in items]):
        if sum(c * sub.character(k).degree for c, (k, _) in zip(counts, items)) != 3:
            continue
        chosen = [sub.character(k) for c, (k, _) in zip(counts, items) if c]
        ker = frozenset(range(len(sub.classes)))
        for chi in chosen:
            ker &= kernel_classes(sub, chi)
        if ker == {0}:
            return True
    return False


def eliminate_orbit(store: DataStore, case: FanoCase, cand: OrbitCandidate) -> OrbitCandidate:
    rules = case.orbit_rules.get(cand.size)
    base = list(case.base_premises)
    if not rules:
        cand.notes.append("no rule registered for this size")
        return cand
    for rule in rules:
        kind = rule["kind"]
        if kind == "assumed":
            cand.eliminated_by = Elimination(kind, ASSUMED, base + [rule["premise"]], rule.get("note", ""))
            return cand
        names = _fusion_names(rule)
        gap = _coverage(store, case, cand.size, names, cand.notes)
        if gap:
            cand.notes.append(f"{kind}: partial coverage, {gap}")
            continue
        fn = rule.get("function", "section")
        details, ok = [], True
        for name in names:
            sub, res = evaluate(store, case, {"restrict": name, "of": fn})
            degs = constituent_degrees(sub, decompose(sub, res))
            if kind == "no_linear_constituent":
                lin = _linear_constituents(sub, res)
                ok = ok and not lin
                details.append(f"{name} ({sub.group}): degrees {degs}, linear {lin or 'none'}")
            elif kind == "tangent_space":
                lin = _linear_constituents(sub, res)
                f3 = _faithful_three(sub, res)
                ok = ok and not (lin and f3)
                details.append(
                    f"{name} ({sub.group}): degrees {degs}, linear {lin or 'none'}, "
                    f"faithful 3-dim part {'yes' if f3 else 'no'}"
                )
            else:
                raise CaseError(f"unknown orbit rule {kind!r}")
        if ok:
            premises = base + ([rule["premise"]] if "premise" in rule else [])
            cand.eliminated_by = Elimination(kind, VERIFIED, premises, "; ".join(details))
            return cand
        cand.notes.append(f"{kind} does not apply: {'; '.join(details)}")
    return cand


def curve_candidates(store: DataStore, case: FanoCase, known: list[int] | None = None) -> list[CurveCandidate]:
    """All (r, d, g) allowed by the three inequalities and the membership filter."""
    n, h3, h0 = case.n, case.h3, case.h0
    cat = store.catalog(case.group)
    allowed = subset_sums(known) if known is not None else None
    rd_max = h3 * n * n
    out = []
    for r in sorted({1} | set(cat.indices())):
        if r > rd_max:
            continue
        for d in range(1, rd_max // r + 1):
            g_max = (n * d + 2) // 2
            for g in range(g_max + 1):
                value = r * ((n + 1) * d - g + 1)
                if not 0 < value <= h0:
                    continue
                if allowed is not None and value not in allowed:
                    continue
                out.append(CurveCandidate(r, d, g, value))
    return out


def _plane_bound(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def _orders_for(store: DataStore, case: FanoCase, params: dict) -> tuple[int, list[int], str]:
    order = int(params.get("order", store.table(case.group).order))
    orders = params["orders"]
    if orders == "group":
        tbl = store.table(case.group)
        orders = sorted({c.order for c in tbl.classes})
        label = f"({order}, element orders of {case.group})"
    else:
        label = f"({order}, {sorted(int(x) for x in orders)})"
    return order, [int(x) for x in orders], label


def _eliminate_curve(store: DataStore, case: FanoCase, cand: CurveCandidate, cross: list) -> CurveCandidate:
    base = list(case.base_premises)
    g_order = store.table(case.group).order
    if cand.r == 1:
        if not hurwitz.hurwitz_bound(g_order, cand.g):
            cand.eliminated_by = Elimination(
                "bound", VERIFIED, base + ["curve-faithful"],
                f"84(g-1) = {84 * (cand.g - 1)} < |{case.group}| = {g_order}",
            )
            return cand
        cand.chain.append(f"bound holds: 84(g-1) = {84 * (cand.g - 1)} >= {g_order}")
        primary = case.hurwitz.get("primary")
        if primary:
            order, orders, label = _orders_for(store, case, primary)
            inst = hurwitz.HurwitzInstance(order, orders, cand.g)
            try:
                res = hurwitz.feasible(inst)
            except hurwitz.PreconditionViolated as exc:
                cand.chain.append(f"signature {label}: {exc}")
                res = None
            if isinstance(res, hurwitz.Infeasible):
                cand.eliminated_by = Elimination(
                    "signature", VERIFIED, base + ["curve-faithful"],
                    f"{label}: lhs {hurwitz.lhs(inst)} has no solution",
                )
            elif res is not None:
                cand.chain.append(f"signature {label}: solution {res}")
            for extra in case.hurwitz.get("cross_checks", []):
                o2, r2, l2 = _orders_for(store, case, extra)
                i2 = hurwitz.HurwitzInstance(o2, r2, cand.g)
                r = hurwitz.feasible(i2)
                verdict = "INFEASIBLE" if isinstance(r, hurwitz.Infeasible) else f"FEASIBLE {r}"
                cand.chain.append(f"cross-check {l2}: lhs {hurwitz.lhs(i2)}, {verdict}")
                cross.append({"g": cand.g, "parameters": l2, "lhs": str(hurwitz.lhs(i2)), "verdict": verdict})
        if cand.eliminated_by is None and cand.g > _plane_bound(cand.d):
            cand.eliminated_by = _genus_elimination(base, cand)
        return cand
    for rule in case.curve_rules:
        if int(rule.get("index", cand.r)) != cand.r:
            continue
        kind = rule["kind"]
        if kind != "span":
            raise CaseError(f"unknown curve rule {kind!r}")
        names = _fusion_names(rule)
        gap = _coverage(store, case, cand.r, names, cand.chain)
        if gap:
            cand.chain.append(f"span: partial coverage, {gap}")
            continue
        fn = rule.get("function", "section")
        ok, details = True, []
        for name in names:
            sub, res = evaluate(store, case, {"restrict": name, "of": fn})
            degs = constituent_degrees(sub, decompose(sub, res))
            dims = sorted(s for s in subset_sums(degs) if 2 <= s <= cand.d + 1)
            ok = ok and not dims
            details.append(f"{name} ({sub.group}): degrees {degs}, subspaces of dim 2..{cand.d + 1}: {dims or 'none'}")
        if ok:
            cand.eliminated_by = Elimination("span", VERIFIED, base + ["curve-span"], "; ".join(details))
            return cand
        cand.chain.append(f"span does not apply: {'; '.join(details)}")
    if cand.g > _plane_bound(cand.d):
        cand.eliminated_by = _genus_elimination(base, cand)
    else:
        cand.chain.append("no registered rule eliminates this candidate")
    return cand


def _genus_elimination(base: list[str], cand: CurveCandidate) -> Elimination:
    return Elimination(
        "genus", ASSUMED, base + ["genus-bound"],
        f"g = {cand.g} exceeds (d-1)(d-2)/2 = {_plane_bound(cand.d)} for d = {cand.d}",
    )


# -- the report --------------------------------------------------------------


@dataclass
class CaseReport:
    case_id: str
    inputs: dict
    checks: list[SideCheck]
    orbits: list[OrbitCandidate]
    curves: list[CurveCandidate]
    cross_checks: list[dict]
    premises: dict[str, str]
    discrepancies: list[str] = field(default_factory=list)
    description: str = ""

    @property
    def survivors(self) -> list[str]:
        out = [f"orbit {o.size}" for o in self.orbits if o.eliminated_by is None]
        out += [f"curve r={c.r} d={c.d} g={c.g}" for c in self.curves if c.eliminated_by is None]
        return out

    @property
    def verdict(self) -> str:
        s = self.survivors
        return "AllEliminated" if not s else f"Survivors({', '.join(s)})"

    @property
    def checks_ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.verdict == "AllEliminated" and self.checks_ok

    @property
    def assumed_steps(self) -> list[str]:
        used = set()
        for cand in [*self.orbits, *self.curves]:
            if cand.eliminated_by is not None:
                used.update(cand.eliminated_by.premises)
        return sorted(used)

    def as_dict(self) -> dict:
        return {
            "case": self.case_id,
            "description": self.description,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "checks_ok": self.checks_ok,
            "checks": [c.as_dict() for c in self.checks],
            "orbits": [o.as_dict() for o in self.orbits],
            "curves": [c.as_dict() for c in self.curves],
            "cross_checks": list(self.cross_checks),
            "discrepancies": list(self.discrepancies),
            "assumed": [{"id": p, "statement": self.premises.get(p, "")} for p in self.assumed_steps],
            "assumed_count": len(self.assumed_steps),
        }


def run_case(store: DataStore, case_id: str) -> CaseReport:
    case = load_case(store, case_id)
    checks = [run_check(store, case, c) for c in case.checks]
    known, kchk = _known_degrees(store, case)
    if kchk is not None:
        checks.insert(0, kchk)
    orbits = [eliminate_orbit(store, case, c) for c in orbit_candidates(store, case, known)]
    cross: list[dict] = []
    curves = [_eliminate_curve(store, case, c, cross) for c in curve_candidates(store, case, known)]
    discrepancies = []
    primary = case.hurwitz.get("primary")
    g_order = store.table(case.group).order
    if primary and int(primary.get("order", g_order)) != g_order:
        discrepancies.append(
            f"signature step uses group order {primary['order']}, but {case.group} has order {g_order}"
        )
    seen = set()
    unique = []
    for rec in cross:
        key = (rec["g"], rec["parameters"])
        if key in seen:
            continue
        seen.add(key)
        unique.append(rec)
        if rec["verdict"] != "INFEASIBLE":
            discrepancies.append(f"g={rec['g']} is not excluded by {rec['parameters']}: {rec['verdict']}")
    return CaseReport(
        case_id, case.inputs(), checks, orbits, curves, unique, _premises(store), discrepancies, case.description
    )


# -- quotient by the center --------------------------------------------------


@dataclass
class GlobalReport:
    name: str
    items: list[SideCheck]
    premises: list[str]
    premise_text: dict[str, str]

    @property
    def verdict(self) -> str:
        bad = [i.name for i in self.items if not i.passed]
        return "AllEliminated" if not bad else f"Failed({', '.join(bad)})"

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "items": [i.as_dict() for i in self.items],
            "assumed": [{"id": p, "statement": self.premise_text.get(p, "")} for p in sorted(self.premises)],
            "assumed_count": len(set(self.premises)),
        }


def _first_invariant(tbl: CharacterTable, phi: VirtualCharacter, d_max: int) -> int | None:
    from .repring import sym_powers, _trivial_multiplicity

    for d, s in enumerate(sym_powers(tbl, phi, d_max)):
        if d and _trivial_multiplicity(tbl, s):
            return d
    return None


def quotient_invariant_check(store: DataStore) -> GlobalReport:
    """Quotients by a central involution: the branch divisor needs an invariant of small degree.

    For X -> Y = X/z with Y one of the case varieties of Fano index i, the
    branch divisor is B = 2D with D = kH and 0 < k < i, so it is cut out by
    an invariant of degree 2k <= 2(i - 1).  Odd index is impossible outright.
    """
    expected = store.expected_yaml("quotients.yaml")
    items, premises = [], {"branch-divisor"}
    for row in expected["cases"]:
        case = load_case(store, row["case"])
        idx = case.n
        if idx % 2:
            items.append(SideCheck(f"{case.case_id}: Fano index {idx}", True, "odd", "odd", "B = 2D forces even index"))
            premises.add("even-index")
            continue
        degrees = list(range(2, 2 * (idx - 1) + 1, 2))
        tbl, phi = evaluate(store, case, row.get("function", "section"))
        counts = [invariant_count(tbl, phi, d) for d in degrees]
        first = _first_invariant(tbl, phi, int(row.get("search_to", 12)))
        ok = not any(counts) and first == row.get("first_invariant")
        items.append(
            SideCheck(
                f"{case.case_id}: invariants of degree {degrees} on {tbl.group} {_describe(row.get('function', 'section'))}",
                ok,
                {"counts": counts, "first_invariant": first},
                {"counts": [0] * len(degrees), "first_invariant": row.get("first_invariant")},
                row.get("note", ""),
            )
        )
    return GlobalReport("quotient_invariant_check", items, sorted(premises), _premises(store))


# -- 3.A7 --------------------------------------------------------------------


@dataclass(frozen=True)
class Section5Params:
    N: int

    def __post_init__(self):
        if not 24 - Fraction(3 * self.N, 2) > 0:
            raise ValueError(f"N = {self.N} violates 24 - 3N/2 > 0")

    @property
    def k_cubed(self) -> Fraction:
        # dim|-K| = -1 = (1/2)(-K)^3 - N/4 + 2
        return 2 * (Fraction(-1) + Fraction(self.N, 4) - 2)

    @property
    def dim_2k(self) -> Fraction:
        return Fraction(5, 2) * self.k_cubed - Fraction(self.N, 4) + 4

    @property
    def two_k_cubed(self) -> Fraction:
        return 8 * self.k_cubed


def _central_character(tbl: CharacterTable, chi: VirtualCharacter) -> tuple[str, ...]:
    return tuple(str(chi.values[c] / chi.values[0]) for c in sorted(tbl.center_classes))


def a7_exclusion_checks(store: DataStore) -> GlobalReport:
    t3 = store.table("3.A7")
    cat = store.catalog("A7")
    items: list[SideCheck] = []
    premises = ["a7-orbifold-formulas", "a7-orbit-sizes", "a7-anticanonical-model", "a7-quadrics"]

    # (i) 24 - 3N/2 > 0, orbit sizes up to 15
    n_max = max(N for N in range(0, 100) if 24 - Fraction(3 * N, 2) > 0)
    small = [(s, " | ".join(e.structure for e in cat.at_index(s))) for s in cat.indices() if s <= n_max]
    items.append(
        SideCheck(
            "(i) N bound and orbit sizes",
            n_max == 15 and [s for s, _ in small] == [7, 15],
            {"N_max": n_max, "orbits": dict(small)},
            {"N_max": 15, "orbits": {7: "A6", 15: "L2(7)"}},
        )
    )

    # (ii) bookkeeping for the admissible N
    admissible = [N for N in (7, 14, 15) if Section5Params(N).k_cubed > 0]
    table = {N: (Section5Params(N).k_cubed, Section5Params(N).dim_2k, Section5Params(N).two_k_cubed) for N in admissible}
    ok = admissible == [14, 15] and table[14][:2] == (1, 3) and table[15][:2] == (Fraction(3, 2), 4)
    ok = ok and all(v[2] == 4 * (N - 12) for N, v in table.items()) and sorted(v[2] for v in table.values()) == [8, 12]
    items.append(
        SideCheck(
            "(ii) (-K)^3 = N/2 - 6, dim|-2K| = N - 11, (-2K)^3 = 4(N - 12)",
            ok,
            {N: [str(x) for x in v] for N, v in table.items()},
            {14: ["1", "3", "8"], 15: ["3/2", "4", "12"]},
        )
    )

    # (iii) h0(-2K) <= 5 is below every nontrivial degree
    h0 = max(int(v[1]) + 1 for v in table.values())
    mnd = min_nontrivial_degree(t3)
    items.append(SideCheck("(iii) h0(-2K) < smallest nontrivial degree", h0 < mnd, [h0, mnd], "h0 < degree"))

    # (iv) g + 2 <= 12 with two central characters forces 6 + 6
    chars = [chi for chi in t3.irreducibles if not is_trivial(chi) and chi.degree <= 12]
    combos = set()
    for k in range(1, 12 // mnd + 1):
        for pick in itertools.combinations_with_replacement(chars, k):
            if sum(int(c.degree) for c in pick) > 12:
                continue
            if len({_central_character(t3, c) for c in pick}) < 2:
                continue
            combos.add(tuple(sorted(int(c.degree) for c in pick)))
    items.append(SideCheck("(iv) dim V = g + 2 <= 12 forces 6 + 6", sorted(combos) == [(6, 6)], sorted(combos), [(6, 6)]))

    # (v) quadrics through X at g = 10
    g = 10
    quadrics = Fraction((g - 2) * (g - 3), 2)
    via_rr = (g + 2) * (g + 3) // 2 - 5 * g
    items.append(SideCheck("(v) dim Q = (g-2)(g-3)/2", quadrics == 28 == via_rr, [str(quadrics), via_rr], 28))

    # (vi) the displayed decompositions
    for dc in sym_square_decompositions_3A7(t3):
        items.append(SideCheck(f"(vi) {dc.name}", dc.passed, dc.observed, dc.expected, dc.detail))
    six = [c for c in t3.irreducibles if c.degree == 6]
    faithful6 = [c for c in six if is_faithful(t3, c)]
    plain6 = [c for c in six if not is_faithful(t3, c)]
    u = faithful6[0]
    pairs = {
        "faithful": (u, u.conjugate(), [1, 14, 21]),
        "mixed": (u, plain6[0], [15, 21]),
    }
    displays = {}
    for kind, (v1, v2, expected) in pairs.items():
        degs = constituent_degrees(t3, decompose(t3, tensor(v1, v2)))
        s1 = constituent_degrees(t3, decompose(t3, sym_power(t3, v1, 2)))
        s2 = constituent_degrees(t3, decompose(t3, sym_power(t3, v2, 2)))
        displays[kind] = (s1, s2, degs)
        items.append(SideCheck(f"(vi) V' x V'' ({kind})", degs == expected, degs, expected))

    # (vii) 28-dim Q inside S^2V' + S^2V'' + V'xV'', meeting both squares
    for kind, (s1, s2, tp) in displays.items():
        parts = [("S2V'", d) for d in s1] + [("S2V''", d) for d in s2] + [("V'V''", d) for d in tp]
        bad, admissible = [], 0
        for mask in itertools.product((0, 1), repeat=len(parts)):
            chosen = [p for p, b in zip(parts, mask) if b]
            if sum(d for _, d in chosen) != 28:
                continue
            if not any(w == "S2V'" for w, _ in chosen) or not any(w == "S2V''" for w, _ in chosen):
                continue
            admissible += 1
            if not any(d == 6 and w in ("S2V'", "S2V''") for w, d in chosen):
                bad.append(chosen)
        items.append(
            SideCheck(
                f"(vii) every admissible Q has a 6-dim piece in a square ({kind})",
                not bad and admissible > 0,
                f"{len(bad)} counterexamples among {admissible} admissible",
                "0 counterexamples",
                f"S2V' {s1}, S2V'' {s2}, V'V'' {tp}",
            )
        )
    return GlobalReport("a7_exclusion_checks", items, premises, _premises(store))


# -- linear groups of low degree ---------------------------------------------


def _is_quasi_simple(tbl: CharacterTable) -> bool:
    linear = [c for c in tbl.irreducibles if c.degree == 1]
    if len(linear) != 1:
        return False
    center = tbl.center_classes
    # G/Z simple: every nontrivial irreducible has kernel inside the center
    return all(is_trivial(c) or kernel_classes(tbl, c) <= center for c in tbl.irreducibles) and len(tbl.classes) > len(center)


def _low_degree_faithful(tbl: CharacterTable, bound: int) -> list[tuple[str, ...]]:
    chars = [c for c in tbl.irreducibles if not is_trivial(c) and c.degree <= bound]
    out = []
    for k in range(1, bound + 1):
        for pick in itertools.combinations_with_replacement(chars, k):
            if sum(int(c.degree) for c in pick) > bound:
                continue
            ker = frozenset(range(len(tbl.classes)))
            for c in pick:
                ker &= kernel_classes(tbl, c)
            if ker == {0}:
                out.append(tuple(c.label for c in pick))
    return out


def _rational_low_degree(tbl: CharacterTable, bound: int) -> list[tuple[str, ...]]:
    chars = [c for c in tbl.irreducibles if not is_trivial(c) and c.degree <= bound]
    out = []
    for k in range(1, bound + 1):
        for pick in itertools.combinations_with_replacement(chars, k):
            if sum(int(c.degree) for c in pick) > bound:
                continue
            total = pick[0]
            for c in pick[1:]:
                total = total + c
            if all(v.is_rational() for v in total.values):
                out.append(tuple(c.label for c in pick))
    return out


def blichfeldt_consistency(store: DataStore, expected: Sequence[str] = ("A5", "2.A5", "3.A6", "PSL2(7)")) -> GlobalReport:
    qs = sorted(g for g, t in store.tables.items() if _is_quasi_simple(t))
    have = {g: _low_degree_faithful(store.tables[g], 3) for g in qs}
    found = sorted(g for g, v in have.items() if v)
    items = [
        SideCheck(
            "quasi-simple groups with a faithful representation of dimension <= 3",
            found == sorted(expected),
            found,
            sorted(expected),
            f"searched {', '.join(qs)}",
        )
    ]
    rational = {g: _rational_low_degree(store.tables[g], 3) for g in qs}
    bad = sorted(g for g, v in rational.items() if v)
    items.append(SideCheck("no nontrivial rational representation of dimension <= 3", not bad, bad, []))
    return GlobalReport("blichfeldt_consistency", items, [], {})
