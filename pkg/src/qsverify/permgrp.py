"""Brute-force permutation groups: closure, classes, power maps, cycle index.

This is an oracle for small groups (up to a few times 10^4 elements), used
to cross-check curated character-table data.  Nothing here is clever: the
group is enumerated in full and classes are found as conjugation orbits.
"""
from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "PermGroup",
    "CycleIndexTerm",
    "CapExceeded",
    "DEFAULT_CAP",
    "parse_cycles",
    "parse_perm_file",
    "enumerate_group",
    "conjugacy_classes",
    "power_map",
    "cycle_index",
    "polya_invariant_count",
    "element_order_set",
    "permutation_character",
    "class_signature",
    "match_table",
]

DEFAULT_CAP = 2**20


class CapExceeded(RuntimeError):
    pass


Permutation = tuple[int, ...]  # images of 0..n-1


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q (right action, as in GAP)."""
    return tuple(q[i] for i in p)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_power(p: Permutation, k: int) -> Permutation:
    result = tuple(range(len(p)))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycle_type(p: Permutation) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths))


def perm_order(p: Permutation) -> int:
    o = 1
    for n in cycle_type(p):
        o = o * n // gcd(o, n)
    return o


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1,2,3)(4,5)``."""
    images = list(range(degree))
    stripped = text.replace(" ", "")
    if _CYCLE.sub("", stripped):
        raise ValueError(f"bad cycle notation: {text!r}")
    for body in _CYCLE.findall(stripped):
        if not body:
            continue
        pts = [int(x) - 1 for x in body.split(",")]
        if len(set(pts)) != len(pts) or min(pts) < 0 or max(pts) >= degree:
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


@dataclass
class PermGroup:
    generators: list[Permutation]
    degree: int
    name: str = ""
    elements: list[Permutation] = field(default_factory=list, repr=False)
    _classes: list | None = field(default=None, repr=False)
    _class_of: dict | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)


def parse_perm_file(path: str | Path) -> PermGroup:
    """Read a generator file with ``name:``/``degree:`` headers and cycle lines."""
    header: dict[str, str] = {}
    gens: list[str] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("("):
            gens.append(line)
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"{path}:{lineno}: cannot parse {line!r}")
        header[key.strip()] = value.strip()
    degree = int(header["degree"])
    g = PermGroup([parse_cycles(s, degree) for s in gens], degree, header.get("name", ""))
    g.expected_order = int(header["order"]) if "order" in header else None  # type: ignore[attr-defined]
    return g


def enumerate_group(
    gens: Sequence[Permutation], degree: int | None = None, cap: int = DEFAULT_CAP, name: str = ""
) -> PermGroup:
    """Breadth-first closure of the generators; elements sorted by image tuple."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must share one degree")
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"closure exceeds cap {cap}")
                queue.append(y)
    return PermGroup(list(gens), degree, name, sorted(seen))


def _ensure_classes(g: PermGroup) -> None:
    if g._classes is not None:
        return
    if not g.elements:
        raise ValueError("group is not enumerated")
    gens_inv = [(s, inverse(s)) for s in g.generators]
    class_of: dict[Permutation, int] = {}
    raw = []
    for x in g.elements:
        if x in class_of:
            continue
        idx = len(raw)
        class_of[x] = idx
        members = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, si in gens_inv:
                z = compose(compose(si, y), s)
                if z not in class_of:
                    class_of[z] = idx
                    members.append(z)
                    queue.append(z)
        raw.append((perm_order(x), len(members), min(members)))
    # order by element order, then size, then representative
    perm = sorted(range(len(raw)), key=lambda i: raw[i])
    renum = {old: new for new, old in enumerate(perm)}
    g._classes = [raw[i] for i in perm]
    g._class_of = {x: renum[i] for x, i in class_of.items()}


def conjugacy_classes(g: PermGroup) -> list[tuple[Permutation, int, int]]:
    """(representative, size, element order) per class, deterministically ordered."""
    _ensure_classes(g)
    return [(rep, size, order) for order, size, rep in g._classes]


def class_index(g: PermGroup, x: Permutation) -> int:
    _ensure_classes(g)
    return g._class_of[x]


def power_map(g: PermGroup, p: int) -> list[int]:
    """Class index of x^p for each class of x."""
    return [class_index(g, perm_power(rep, p)) for rep, _, _ in conjugacy_classes(g)]


@dataclass(frozen=True)
class CycleIndexTerm:
    cycle_type: tuple[int, ...]
    weight: Fraction


def cycle_index(g: PermGroup) -> list[CycleIndexTerm]:
    """One term per cycle type, weighted by the fraction of elements having it."""
    n = g.order
    weights: dict[tuple[int, ...], int] = {}
    for rep, size, _ in conjugacy_classes(g):
        ct = cycle_type(rep)
        weights[ct] = weights.get(ct, 0) + size
    return [CycleIndexTerm(ct, Fraction(w, n)) for ct, w in sorted(weights.items())]


def polya_invariant_count(ci: Iterable[CycleIndexTerm], d: int) -> int:
    """Orbits on degree-d monomials: [t^d] sum of w * prod 1/(1 - t^len)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    total = Fraction(0)
    for term in ci:
        series = [0] * (d + 1)
        series[0] = 1
        for length in term.cycle_type:
            for i in range(length, d + 1):
                series[i] += series[i - length]
        total += term.weight * series[d]
    if total.denominator != 1:
        raise ArithmeticError("non-integral orbit count; cycle index is inconsistent")
    return int(total)


def element_order_set(g: PermGroup) -> list[int]:
    return sorted({order for _, _, order in conjugacy_classes(g)})


def permutation_character(g: PermGroup) -> list[int]:
    """Fixed-point counts on the natural points, per class."""
    return [sum(1 for i, j in enumerate(rep) if i == j) for rep, _, _ in conjugacy_classes(g)]


def class_signature(g: PermGroup) -> Counter:
    """Multiset of (element order, class size)."""
    return Counter((order, size) for _, size, order in conjugacy_classes(g))


def match_table(g: PermGroup, tbl) -> list[int] | None:
    """A class bijection onto a character table, or None if none exists.

    ``tbl`` needs ``classes`` (with ``order`` and ``size``) and ``power_maps``.
    The bijection must preserve element order and class size and commute with
    every power map the table stores.  Found by backtracking; classes of
    Galois-conjugate elements are interchangeable, so any witness will do.
    """
    ours = conjugacy_classes(g)
    if len(ours) != len(tbl.classes) or g.order != tbl.order:
        return None
    primes = sorted(tbl.power_maps)
    our_pm = {p: power_map(g, p) for p in primes}
    options = [
        [j for j, c in enumerate(tbl.classes) if (c.order, c.size) == (order, size)]
        for _, size, order in ours
    ]
    order = sorted(range(len(ours)), key=lambda i: (ours[i][2], len(options[i])))
    sigma: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int) -> bool:
        for p in primes:
            tp = tbl.power_maps[p]
            # x -> x^p and anything assigned that powers onto x
            j = our_pm[p][i]
            if j in sigma and tp[sigma[i]] != sigma[j]:
                return False
            for k, img in sigma.items():
                if our_pm[p][k] == i and tp[img] != sigma[i]:
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for j in options[i]:
            if j in used:
                continue
            sigma[i] = j
            used.add(j)
            if consistent(i) and search(pos + 1):
                return True
            del sigma[i]
            used.discard(j)
        return False

    if not search(0):
        return None
    return [sigma[i] for i in range(len(ours))]
