"""Character tables, fusions and subgroup catalogs.

Holds the data model and the file parsers, plus the basic character
calculus: inner products, decomposition into irreducibles, restriction
along a fusion map, restriction to a cyclic subgroup, kernels.

Class and character indices are 0-based in memory; the data files store
1-based class indices, as printed by GAP.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .cyclo import Cyclotomic, NotRational, cyc_sum, parse_cyclotomic, zeta, CycloSyntaxError

__all__ = [
    "ConjClass",
    "CharacterTable",
    "VirtualCharacter",
    "FusionMap",
    "CatalogEntry",
    "SubgroupIndexCatalog",
    "Check",
    "ValidationReport",
    "DataFormatError",
    "MissingPowerMap",
    "NotACharacter",
    "LabelMismatch",
    "POWER_MAP_PRIMES",
    "parse_table",
    "parse_fusion",
    "parse_catalog",
    "validate",
    "validate_fusion",
    "validate_catalog",
    "compare_maximal",
    "power_class",
    "inner_product",
    "decompose",
    "restrict",
    "restrict_to_cyclic",
    "kernel_classes",
    "is_faithful",
    "min_faithful_degree",
    "min_nontrivial_degree",
    "lift_candidates",
    "trivial_character",
]

POWER_MAP_PRIMES = (2, 3, 5, 7, 11)


class DataFormatError(ValueError):
    """A data file could not be parsed; carries the file and line."""

    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


class MissingPowerMap(KeyError):
    def __init__(self, prime: int):
        super().__init__(f"no power map stored for prime {prime}")
        self.prime = prime


class NotACharacter(ValueError):
    pass


class LabelMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ConjClass:
    label: str
    size: int
    order: int


@dataclass(frozen=True, eq=False)
class VirtualCharacter:
    """A class function on a named table, one value per class."""

    table: str
    values: tuple[Cyclotomic, ...]
    label: str | None = None

    @property
    def degree(self) -> int | Fraction:
        d = self.values[0].to_rational()
        return int(d) if d.denominator == 1 else d

    def relabel(self, label: str | None) -> "VirtualCharacter":
        return VirtualCharacter(self.table, self.values, label)

    def _check(self, other: "VirtualCharacter") -> None:
        if self.table != other.table or len(self.values) != len(other.values):
            raise LabelMismatch(f"class functions on {self.table!r} and {other.table!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.table == other.table and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.table, self.values))

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(self.table, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(-a for a in self.values))

    def __mul__(self, other) -> "VirtualCharacter":
        if isinstance(other, VirtualCharacter):
            self._check(other)
            return VirtualCharacter(self.table, tuple(a * b for a, b in zip(self.values, other.values)))
        if isinstance(other, (int, Fraction)):
            return VirtualCharacter(self.table, tuple(a * other for a in self.values))
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(a.conjugate() for a in self.values))

    def __repr__(self) -> str:
        name = f" {self.label}" if self.label else ""
        return f"<VirtualCharacter{name} on {self.table}: {', '.join(map(str, self.values))}>"


@dataclass
class CharacterTable:
    group: str
    order: int
    classes: tuple[ConjClass, ...]
    power_maps: dict[int, tuple[int, ...]]
    irreducibles: tuple[VirtualCharacter, ...]
    provenance: str = ""
    source: str = "<string>"

    def __post_init__(self):
        self._char_index = {c.label: i for i, c in enumerate(self.irreducibles)}
        self._class_index = {c.label: i for i, c in enumerate(self.classes)}

    def __repr__(self) -> str:
        return f"<CharacterTable {self.group} order={self.order} classes={len(self.classes)}>"

    def __len__(self) -> int:
        return len(self.classes)

    def character(self, label: str) -> VirtualCharacter:
        try:
            return self.irreducibles[self._char_index[label]]
        except KeyError:
            raise KeyError(f"{self.group} has no character {label!r}") from None

    def class_index(self, label: str) -> int:
        try:
            return self._class_index[label]
        except KeyError:
            raise KeyError(f"{self.group} has no class {label!r}") from None

    def class_function(self, values: Iterable, label: str | None = None) -> VirtualCharacter:
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in values)
        if len(vals) != len(self.classes):
            raise LabelMismatch(f"{len(vals)} values for {len(self.classes)} classes of {self.group}")
        return VirtualCharacter(self.group, vals, label)

    @property
    def degrees(self) -> list[int]:
        return [int(c.degree) for c in self.irreducibles]

    @cached_property
    def conjugate_irreducibles(self) -> tuple[tuple[Cyclotomic, ...], ...]:
        return tuple(tuple(v.conjugate() for v in c.values) for c in self.irreducibles)

    @cached_property
    def center_classes(self) -> frozenset[int]:
        """Classes x with |chi(x)| = chi(1) for every irreducible chi."""
        out = set()
        for i in range(len(self.classes)):
            if all(
                chi.values[i] * cc[i] == chi.values[0] * chi.values[0]
                for chi, cc in zip(self.irreducibles, self.conjugate_irreducibles)
            ):
                out.add(i)
        return frozenset(out)

    @property
    def center_order(self) -> int:
        return sum(self.classes[i].size for i in self.center_classes)


# -- parsing ----------------------------------------------------------------

_HEADER = re.compile(r"^([A-Za-z][\w ]*?)\s*:\s*(.*)$")


def _read(source: str | Path) -> tuple[list[str], str]:
    if isinstance(source, Path) or ("\n" not in str(source) and Path(str(source)).exists()):
        p = Path(source)
        return p.read_text(encoding="utf-8").splitlines(), str(p)
    return str(source).splitlines(), "<string>"


def _int(text: str, src: str, line: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DataFormatError(f"expected integer {what}, got {text!r}", src, line) from None


def parse_table(source: str | Path) -> CharacterTable:
    """Parse a character-table file (a path or the text itself)."""
    lines, src = _read(source)
    group = None
    order = None
    provenance = ""
    classes: list[ConjClass] = []
    power_maps: dict[int, tuple[int, ...]] = {}
    chars: list[tuple[str, list[str], int]] = []
    in_classes = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if in_classes and raw[:1].isspace():
            parts = line.split()
            if len(parts) != 3:
                raise DataFormatError("class line needs 'label size order'", src, lineno)
            classes.append(
                ConjClass(parts[0], _int(parts[1], src, lineno, "size"), _int(parts[2], src, lineno, "order"))
            )
            continue
        in_classes = False
        m = _HEADER.match(line)
        if not m:
            raise DataFormatError(f"cannot parse {line!r}", src, lineno)
        key, value = m.group(1), m.group(2)
        if key == "group":
            group = value
        elif key == "order":
            order = _int(value, src, lineno, "order")
        elif key == "provenance":
            provenance = value
        elif key == "classes":
            in_classes = True
        elif key.startswith("powermap "):
            p = _int(key.split()[1], src, lineno, "prime")
            power_maps[p] = tuple(_int(x, src, lineno, "class index") - 1 for x in value.split())
        elif key.startswith("char "):
            label = key.split(None, 1)[1].strip()
            chars.append((label, [v.strip() for v in value.split(",")], lineno))
        else:
            raise DataFormatError(f"unknown header {key!r}", src, lineno)
    if group is None or order is None:
        raise DataFormatError("missing 'group:' or 'order:' header", src)
    if not classes:
        raise DataFormatError("no classes", src)
    n = len(classes)
    if len(chars) != n:
        raise DataFormatError(f"{len(chars)} characters for {n} classes", src)
    irreducibles = []
    for label, texts, lineno in chars:
        if len(texts) != n:
            raise DataFormatError(f"character {label} has {len(texts)} values for {n} classes", src, lineno)
        try:
            vals = tuple(parse_cyclotomic(t) for t in texts)
        except CycloSyntaxError as exc:
            raise DataFormatError(str(exc), src, lineno) from None
        irreducibles.append(VirtualCharacter(group, vals, label))
    for p, pm in power_maps.items():
        if len(pm) != n or any(not 0 <= i < n for i in pm):
            raise DataFormatError(f"power map {p} has wrong length or index range", src)
    needed = {p for p in POWER_MAP_PRIMES if any(c.order % p == 0 for c in classes)}
    missing = sorted(needed - power_maps.keys())
    if missing:
        raise DataFormatError(f"missing power map for prime {missing[0]}", src)
    tbl = CharacterTable(group, order, tuple(classes), power_maps, tuple(irreducibles), provenance, src)
    try:
        degsq = sum(chi.values[0].to_rational() ** 2 for chi in irreducibles)
    except NotRational:
        raise DataFormatError("non-rational degree", src) from None
    if degsq != order:
        raise DataFormatError(f"squared degrees sum to {degsq}, not the order {order}", src)
    return tbl


@dataclass(frozen=True)
class FusionMap:
    name: str
    subgroup: str
    group: str
    map: tuple[int, ...]
    provenance: str = ""


def parse_fusion(source: str | Path) -> FusionMap:
    lines, src = _read(source)
    header: dict[str, str] = {}
    pairs: list[tuple[int, int]] = []
    in_map = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if in_map and raw[:1].isspace():
            parts = line.split()
            if len(parts) != 2:
                raise DataFormatError("map line needs 'subclass class'", src, lineno)
            pairs.append((_int(parts[0], src, lineno, "index") - 1, _int(parts[1], src, lineno, "index") - 1))
            continue
        in_map = False
        m = _HEADER.match(line)
        if not m:
            raise DataFormatError(f"cannot parse {line!r}", src, lineno)
        if m.group(1) == "map":
            in_map = True
        else:
            header[m.group(1)] = m.group(2)
    for key in ("sub", "into"):
        if key not in header:
            raise DataFormatError(f"missing '{key}:' header", src)
    pairs.sort()
    if [i for i, _ in pairs] != list(range(len(pairs))):
        raise DataFormatError("map must list every subgroup class exactly once", src)
    return FusionMap(
        header.get("name", Path(src).stem),
        header["sub"],
        header["into"],
        tuple(j for _, j in pairs),
        header.get("provenance", ""),
    )


@dataclass(frozen=True)
class CatalogEntry:
    index: int
    structure: str
    class_count: int
    maximal: bool
    provenance: str


@dataclass(frozen=True)
class SubgroupIndexCatalog:
    group: str
    order: int
    entries: tuple[CatalogEntry, ...]
    index_cap: int | None = None
    provenance: str = ""

    def indices(self) -> list[int]:
        return sorted({e.index for e in self.entries})

    def at_index(self, index: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.index == index]

    def maximal(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.maximal]


def parse_catalog(source: str | Path) -> SubgroupIndexCatalog:
    lines, src = _read(source)
    header: dict[str, str] = {}
    entries: list[CatalogEntry] = []
    in_rows = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if in_rows and raw[:1].isspace():
            parts = line.split(None, 4)
            if len(parts) < 4 or parts[3] not in ("true", "false"):
                raise DataFormatError("row needs 'index structure classCount maximal provenance'", src, lineno)
            entries.append(
                CatalogEntry(
                    _int(parts[0], src, lineno, "index"),
                    parts[1],
                    _int(parts[2], src, lineno, "class count"),
                    parts[3] == "true",
                    parts[4] if len(parts) > 4 else "",
                )
            )
            continue
        in_rows = False
        m = _HEADER.match(line)
        if not m:
            raise DataFormatError(f"cannot parse {line!r}", src, lineno)
        if m.group(1) == "rows":
            in_rows = True
        else:
            header[m.group(1)] = m.group(2)
    if "group" not in header or "order" not in header:
        raise DataFormatError("missing 'group:' or 'order:' header", src)
    cap = header.get("indexcap")
    return SubgroupIndexCatalog(
        header["group"],
        int(header["order"]),
        tuple(entries),
        int(cap) if cap else None,
        header.get("provenance", ""),
    )


# -- validation -------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    offending: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "offending": [list(o) if isinstance(o, tuple) else o for o in self.offending]}


@dataclass
class ValidationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, offending: list, detail: str = "") -> None:
        self.checks.append(Check(name, not offending, detail, offending))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def _galois_mod(value: Cyclotomic, p: int, modulus: int) -> Cyclotomic:
    """Apply the automorphism zeta_modulus -> zeta_modulus^p to value.

    The exponent is lifted to one coprime to the value's conductor, which is
    harmless when the value really lies in Q(zeta_modulus).
    """
    n = lcm(value.conductor, modulus)
    k = p % modulus or modulus
    while gcd(k, n) != 1:
        k += modulus
    return value.galois(k)


def validate(tbl: CharacterTable) -> ValidationReport:
    """Run every structural invariant of a character table."""
    rep = ValidationReport(tbl.group)
    n = len(tbl.classes)
    order = tbl.order

    rep.add("provenance present", [] if tbl.provenance.strip() else ["missing"])
    rep.add("class labels unique", _duplicates(c.label for c in tbl.classes))
    rep.add("character labels unique", _duplicates(c.label for c in tbl.irreducibles))
    ident = [i for i, c in enumerate(tbl.classes) if c.size == 1 and c.order == 1]
    rep.add("exactly one identity class, first", [] if ident == [0] else ident or ["none"])
    rep.add("class sizes divide order", [c.label for c in tbl.classes if order % c.size])
    total = sum(c.size for c in tbl.classes)
    rep.add("class sizes sum to order", [] if total == order else [total])
    rep.add("element orders divide group order", [c.label for c in tbl.classes if order % c.order])
    rep.add("irreducible count equals class count", [] if len(tbl.irreducibles) == n else [len(tbl.irreducibles)])
    rep.add("value count per character", [c.label for c in tbl.irreducibles if len(c.values) != n])

    bad_deg = []
    for chi in tbl.irreducibles:
        d = chi.values[0]
        if not d.is_rational() or d.to_rational().denominator != 1 or d.to_rational() <= 0:
            bad_deg.append(chi.label)
    rep.add("degrees are positive integers", bad_deg)
    if bad_deg:
        return rep
    degsq = sum(int(d) ** 2 for d in tbl.degrees)
    rep.add("sum of squared degrees equals order", [] if degsq == order else [degsq])
    rep.add("trivial character present",
            [] if any(all(v == 1 for v in c.values) for c in tbl.irreducibles) else ["none"])

    sizes = [c.size for c in tbl.classes]
    conj = tbl.conjugate_irreducibles
    bad = []
    for i, chi in enumerate(tbl.irreducibles):
        for j in range(i, len(tbl.irreducibles)):
            s = cyc_sum(sz * a * b for sz, a, b in zip(sizes, chi.values, conj[j]))
            expected = order if i == j else 0
            if s != expected:
                bad.append((tbl.irreducibles[i].label, tbl.irreducibles[j].label))
    rep.add("first orthogonality", bad)

    bad = []
    cols = list(zip(*(c.values for c in tbl.irreducibles)))
    ccols = list(zip(*conj))
    for a in range(n):
        for b in range(a, n):
            s = cyc_sum(x * y for x, y in zip(cols[a], ccols[b]))
            expected = order // sizes[a] if a == b else 0
            if s != expected:
                bad.append((tbl.classes[a].label, tbl.classes[b].label))
    rep.add("column orthogonality", bad)

    needed = [p for p in POWER_MAP_PRIMES if any(c.order % p == 0 for c in tbl.classes)]
    rep.add("power maps present for primes dividing element orders",
            [p for p in needed if p not in tbl.power_maps])
    bad_order, bad_size, bad_galois, bad_ident = [], [], [], []
    for p, pm in sorted(tbl.power_maps.items()):
        if pm[0] != 0:
            bad_ident.append(p)
        for c, img in enumerate(pm):
            o = tbl.classes[c].order
            if tbl.classes[img].order != o // gcd(o, p):
                bad_order.append((p, tbl.classes[c].label, tbl.classes[img].label))
            if o % p and tbl.classes[img].size != tbl.classes[c].size:
                bad_size.append((p, tbl.classes[c].label))
            if o % p:
                for chi in tbl.irreducibles:
                    if chi.values[img] != _galois_mod(chi.values[c], p, o):
                        bad_galois.append((p, tbl.classes[c].label, chi.label))
    rep.add("power maps fix the identity", bad_ident)
    rep.add("power map order consistency", bad_order)
    rep.add("coprime power maps preserve class size", bad_size)
    rep.add("coprime power maps agree with Galois action", bad_galois)
    return rep


def _duplicates(labels: Iterable[str]) -> list[str]:
    seen, dup = set(), []
    for x in labels:
        if x in seen:
            dup.append(x)
        seen.add(x)
    return dup


def validate_fusion(fus: FusionMap, sub: CharacterTable, tbl: CharacterTable) -> ValidationReport:
    rep = ValidationReport(fus.name)
    rep.add("labels match tables",
            [x for x, y in ((fus.subgroup, sub.group), (fus.group, tbl.group)) if x != y])
    rep.add("one image per subgroup class", [] if len(fus.map) == len(sub.classes) else [len(fus.map)])
    if rep.failures():
        return rep
    rep.add("provenance present", [] if fus.provenance.strip() else ["missing"])
    rep.add("subgroup order divides group order", [] if tbl.order % sub.order == 0 else [sub.order])
    rep.add("identity maps to identity", [] if fus.map[0] == 0 else [fus.map[0]])
    rep.add("element orders preserved",
            [sub.classes[i].label for i, j in enumerate(fus.map) if sub.classes[i].order != tbl.classes[j].order])
    # centralizer orders: |C_H(h)| divides |C_G(h)|
    rep.add("centralizer orders divide",
            [sub.classes[i].label for i, j in enumerate(fus.map)
             if (tbl.order // tbl.classes[j].size) % (sub.order // sub.classes[i].size)])
    bad = []
    for chi in tbl.irreducibles:
        try:
            decompose(sub, restrict(sub, fus, chi), strict=True)
        except (NotACharacter, NotRational):
            bad.append(chi.label)
    rep.add("restrictions of irreducibles are characters", bad)
    return rep


def validate_catalog(cat: SubgroupIndexCatalog) -> ValidationReport:
    rep = ValidationReport(cat.group)
    rep.add("provenance present", [] if cat.provenance.strip() else ["missing"])
    rep.add("indices divide group order", [e.index for e in cat.entries if cat.order % e.index])
    rep.add("indices within cap", [e.index for e in cat.entries if cat.index_cap and e.index > cat.index_cap])
    rep.add("class counts positive", [e.index for e in cat.entries if e.class_count < 1])
    return rep


def compare_maximal(cat: SubgroupIndexCatalog, rows: Iterable[tuple[str, int]]) -> list[str]:
    """Differences between the catalog's maximal classes and (structure, index) rows.

    Each catalog entry stands for class_count conjugacy classes; each row is one class.
    """
    have = Counter()
    for e in cat.maximal():
        have[(e.structure, e.index)] += e.class_count
    want = Counter((s, int(i)) for s, i in rows)
    out = [f"{s} of index {i}: catalog {have[(s, i)]}, expected {want[(s, i)]}"
           for s, i in sorted(set(have) | set(want), key=lambda k: (k[1], k[0]))
           if have[(s, i)] != want[(s, i)]]
    return out


# -- character calculus -----------------------------------------------------


def power_class(tbl: CharacterTable, c: int, k: int) -> int:
    """Class of x^k for x in class c.

    Stored prime power maps are composed along the factorization of k.  A
    prime without a stored map is accepted when it is coprime to the order
    of the current class; its class is then located by the Galois action.
    """
    if k < 0:
        raise ValueError("exponent must be non-negative")
    k %= tbl.classes[c].order
    if k == 0:
        return 0
    for p in _prime_factors(k):
        pm = tbl.power_maps.get(p)
        if pm is not None:
            c = pm[c]
        elif tbl.classes[c].order % p:
            c = _galois_class(tbl, c, p)
        else:
            raise MissingPowerMap(p)
    return c


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        while k % p == 0:
            out.append(p)
            k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def _galois_class(tbl: CharacterTable, c: int, k: int) -> int:
    cache = tbl.__dict__.setdefault("_galois_cache", {})
    o = tbl.classes[c].order
    key = (c, k % o)
    if key not in cache:
        target = [_galois_mod(chi.values[c], k, o) for chi in tbl.irreducibles]
        hits = [
            i for i, cl in enumerate(tbl.classes)
            if cl.order == o and cl.size == tbl.classes[c].size
            and all(chi.values[i] == t for chi, t in zip(tbl.irreducibles, target))
        ]
        if len(hits) != 1:
            raise MissingPowerMap(k)
        cache[key] = hits[0]
    return cache[key]


def _same_table(tbl: CharacterTable, *chars: VirtualCharacter) -> None:
    for chi in chars:
        if chi.table != tbl.group or len(chi.values) != len(tbl.classes):
            raise LabelMismatch(f"class function on {chi.table!r} used with table {tbl.group!r}")


def inner_product(tbl: CharacterTable, phi: VirtualCharacter, psi: VirtualCharacter) -> Fraction:
    _same_table(tbl, phi, psi)
    s = cyc_sum(c.size * a * b.conjugate() for c, a, b in zip(tbl.classes, phi.values, psi.values))
    return s.to_rational() / tbl.order


def decompose(tbl: CharacterTable, phi: VirtualCharacter, strict: bool = True) -> dict[str, int | Fraction]:
    """Multiplicities of the irreducibles in phi (zero entries omitted)."""
    _same_table(tbl, phi)
    sizes = [c.size for c in tbl.classes]
    weighted = [sz * v for sz, v in zip(sizes, phi.values)]
    mult: dict[str, int | Fraction] = {}
    for chi, cc in zip(tbl.irreducibles, tbl.conjugate_irreducibles):
        m = cyc_sum(w * b for w, b in zip(weighted, cc)).to_rational() / tbl.order
        if m:
            mult[chi.label] = int(m) if m.denominator == 1 else m
    if strict:
        bad = {k: v for k, v in mult.items() if not isinstance(v, int) or v < 0}
        if bad:
            raise NotACharacter(f"multiplicities {bad} on {tbl.group}")
        rebuilt = [Cyclotomic.rational(0)] * len(sizes)
        for label, m in mult.items():
            rebuilt = [r + m * v for r, v in zip(rebuilt, tbl.character(label).values)]
        if tuple(rebuilt) != phi.values:
            raise NotACharacter(f"class function on {tbl.group} is outside the span of the irreducibles")
    return mult


def constituent_degrees(tbl: CharacterTable, mult: Mapping[str, int]) -> list[int]:
    """Degrees of the constituents, repeated by multiplicity, sorted."""
    out = []
    for label, m in mult.items():
        out += [int(tbl.character(label).degree)] * int(m)
    return sorted(out)


def restrict(tbl_h: CharacterTable, fusion: FusionMap, phi: VirtualCharacter) -> VirtualCharacter:
    if fusion.subgroup != tbl_h.group:
        raise LabelMismatch(f"fusion {fusion.name} starts at {fusion.subgroup}, not {tbl_h.group}")
    if fusion.group != phi.table:
        raise LabelMismatch(f"fusion {fusion.name} ends at {fusion.group}, not {phi.table}")
    if len(fusion.map) != len(tbl_h.classes):
        raise LabelMismatch(f"fusion {fusion.name} does not cover the classes of {tbl_h.group}")
    return VirtualCharacter(tbl_h.group, tuple(phi.values[j] for j in fusion.map), phi.label)


def restrict_to_cyclic(tbl: CharacterTable, c: int, phi: VirtualCharacter) -> dict[int, int | Fraction]:
    """Eigenvalue multiplicities of a generator g of class c.

    Entry k counts the eigenvalue exp(2 pi i k / ord(g)).
    """
    _same_table(tbl, phi)
    o = tbl.classes[c].order
    vals = [phi.values[power_class(tbl, c, j)] for j in range(o)]
    out: dict[int, int | Fraction] = {}
    for k in range(o):
        s = cyc_sum(v * zeta(o, -k * j) for j, v in enumerate(vals))
        m = s.to_rational() / o
        out[k] = int(m) if m.denominator == 1 else m
    return out


def kernel_classes(tbl: CharacterTable, chi: VirtualCharacter) -> frozenset[int]:
    _same_table(tbl, chi)
    d = chi.values[0]
    return frozenset(i for i, v in enumerate(chi.values) if v == d)


def is_faithful(tbl: CharacterTable, chi: VirtualCharacter) -> bool:
    return kernel_classes(tbl, chi) == {0}


def center_faithful(tbl: CharacterTable, chi: VirtualCharacter) -> bool:
    """Kernel meets the center trivially."""
    return not (kernel_classes(tbl, chi) & tbl.center_classes) - {0}


def is_trivial(chi: VirtualCharacter) -> bool:
    return all(v == 1 for v in chi.values)


def min_faithful_degree(tbl: CharacterTable) -> int | None:
    degs = [int(chi.degree) for chi in tbl.irreducibles if is_faithful(tbl, chi)]
    return min(degs) if degs else None


def min_nontrivial_degree(tbl: CharacterTable) -> int:
    return min(int(chi.degree) for chi in tbl.irreducibles if not is_trivial(chi))


def trivial_character(tbl: CharacterTable) -> VirtualCharacter:
    return tbl.class_function([1] * len(tbl.classes), "1")


def lift_candidates(family: Sequence[CharacterTable], d: int) -> list[tuple[str, str]]:
    """Nontrivial degree-d irreducibles whose kernel meets the center trivially."""
    out = []
    for tbl in family:
        for chi in tbl.irreducibles:
            if chi.degree == d and not is_trivial(chi) and center_faithful(tbl, chi):
                out.append((tbl.group, chi.label))
    return out
