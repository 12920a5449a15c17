"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_n) is stored as a polynomial in zeta_n of degree below
phi(n), i.e. the remainder modulo the n-th cyclotomic polynomial.  The
coefficients are kept as a tuple of integers over one positive common
denominator, which keeps sums and products on integer tuples.

Operands living at different conductors are embedded into the lcm conductor
before combining.  The smallest conductor is only computed when asked for
(``reduce_conductor``) or when serializing.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "Cyclotomic",
    "NotRational",
    "CycloSyntaxError",
    "cyclotomic_polynomial",
    "cyc_make",
    "cyc_add",
    "cyc_mul",
    "cyc_neg",
    "cyc_eq",
    "cyc_conj",
    "cyc_galois",
    "cyc_to_rational",
    "cyc_sum",
    "reduce_conductor",
    "parse_cyclotomic",
    "format_cyclotomic",
    "zeta",
    "TOLERANCE",
]

# Rationals are the stdlib fractions; always normalized, positive denominator.
Rational = Fraction

# Tolerance for floating-point oracle checks.  Never used to decide equality.
TOLERANCE = 1e-9


class NotRational(ValueError):
    """Raised when a cyclotomic number is asked for a rational value it lacks."""


class CycloSyntaxError(ValueError):
    """Malformed cyclotomic expression text."""


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d.
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...] | None, ...]:
    """Row e holds zeta_n^e written in the power basis, for phi(n) <= e < n.

    Entries below phi(n) are None: those powers are basis vectors already.
    """
    f = _phi(n)
    poly = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...] | None] = [None] * f
    cur = [0] * f
    cur[-1] = 1
    for _ in range(f, n):
        top = cur[-1]
        cur = [0] + cur[:-1]
        for i in range(f):
            cur[i] -= top * poly[i]
        rows.append(tuple(cur))
    return tuple(rows)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = reduce(gcd, num, den)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _reduce_dense(n: int, acc: list[int]) -> list[int]:
    """Fold a length-n list of coefficients of zeta^e into the power basis."""
    f = _phi(n)
    out = acc[:f]
    rows = _reduction_rows(n)
    for e in range(f, n):
        c = acc[e]
        if c:
            row = rows[e]
            for i in range(f):
                r = row[i]
                if r:
                    out[i] += c * r
    return out


class Cyclotomic:
    """An element of Q(zeta_n) in canonical polynomial form.

    Values are immutable.  ``num[e] / den`` is the coefficient of ``zeta_n^e``
    for ``0 <= e < phi(n)``.
    """

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, conductor: int, num: Sequence[int], den: int = 1):
        # Trusted constructor: callers pass a reduced polynomial.
        self._n = conductor
        self._num, self._den = _normalize(list(num), den)
        self._hash: int | None = None

    @classmethod
    def _raw(cls, n: int, num: tuple[int, ...], den: int) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj._n = n
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    @classmethod
    def from_dense(cls, n: int, acc: list[int], den: int = 1) -> "Cyclotomic":
        """Build from coefficients of zeta_n^0 .. zeta_n^(n-1)."""
        num, den = _normalize(_reduce_dense(n, acc), den)
        return cls._raw(n, num, den)

    # -- accessors --------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coefficients(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by basis exponent."""
        return {e: Fraction(c, self._den) for e, c in enumerate(self._num) if c}

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def is_zero(self) -> bool:
        return not any(self._num)

    def to_rational(self) -> Fraction:
        if any(self._num[1:]):
            raise NotRational(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def to_complex(self, k: int = 1) -> complex:
        """Evaluate at zeta_n^k = exp(2 pi i k / n)."""
        n = self._n
        return sum(
            (c * cmath.exp(2j * cmath.pi * k * e / n) for e, c in enumerate(self._num) if c),
            0j,
        ) / self._den

    def embeddings(self) -> list[complex]:
        n = self._n
        return [self.to_complex(k) for k in range(1, n + 1) if gcd(k, n) == 1]

    # -- conductor handling -----------------------------------------------

    def _dense(self, n: int, k: int = 1) -> list[int]:
        """Coefficients at conductor n after zeta_self -> zeta_n^(m*k)."""
        m = n // self._n
        acc = [0] * n
        for e, c in enumerate(self._num):
            if c:
                acc[(e * m * k) % n] += c
        return acc

    def promote(self, n: int) -> "Cyclotomic":
        if n == self._n:
            return self
        if n % self._n:
            raise ValueError(f"conductor {self._n} does not divide {n}")
        if self._n == 1:
            return Cyclotomic._raw(n, self._num + (0,) * (_phi(n) - 1), self._den)
        return Cyclotomic._raw(n, *_normalize(_reduce_dense(n, self._dense(n)), self._den))

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self._n, tuple(-c for c in self._num), self._den)

    def __pos__(self) -> "Cyclotomic":
        return self

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if a._n != b._n:
            if b._n == 1:
                return a._add_rational(b._num[0], b._den)
            if a._n == 1:
                return b._add_rational(a._num[0], a._den)
            n = lcm(a._n, b._n)
            a, b = a.promote(n), b.promote(n)
        da, db = a._den, b._den
        if da == db:
            num = [x + y for x, y in zip(a._num, b._num)]
            return Cyclotomic._raw(a._n, *_normalize(num, da))
        num = [x * db + y * da for x, y in zip(a._num, b._num)]
        return Cyclotomic._raw(a._n, *_normalize(num, da * db))

    __radd__ = __add__

    def _add_rational(self, p: int, q: int) -> "Cyclotomic":
        d = self._den
        num = [c * q for c in self._num]
        num[0] += p * d
        return Cyclotomic._raw(self._n, *_normalize(num, d * q))

    def __sub__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if b._n == 1:
            return a._scale(b._num[0], b._den)
        if a._n == 1:
            return b._scale(a._num[0], a._den)
        if a._n != b._n:
            n = lcm(a._n, b._n)
            a, b = a.promote(n), b.promote(n)
        n = a._n
        acc = [0] * n
        bterms = [(j, y) for j, y in enumerate(b._num) if y]
        for i, x in enumerate(a._num):
            if x:
                for j, y in bterms:
                    k = i + j
                    if k >= n:
                        k -= n
                    acc[k] += x * y
        num, den = _normalize(_reduce_dense(n, acc), a._den * b._den)
        return Cyclotomic._raw(n, num, den)

    __rmul__ = __mul__

    def _scale(self, p: int, q: int) -> "Cyclotomic":
        if p == 0:
            return Cyclotomic._raw(self._n, (0,) * len(self._num), 1)
        return Cyclotomic._raw(self._n, *_normalize([c * p for c in self._num], self._den * q))

    def __truediv__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic")
        if other.is_rational():
            return self._scale(other._den, other._num[0])
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "Cyclotomic":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse, by solving the multiplication-matrix system."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational():
            return Cyclotomic.rational(Fraction(self._den, self._num[0]))
        n, f = self._n, _phi(self._n)
        # column j = self * zeta^j
        cols = []
        for j in range(f):
            acc = [0] * n
            for i, c in enumerate(self._num):
                if c:
                    acc[(i + j) % n] += c
            cols.append(_reduce_dense(n, acc))
        rows = [[Fraction(cols[j][i], self._den) for j in range(f)] for i in range(f)]
        rhs = [Fraction(int(i == 0)) for i in range(f)]
        sol = _solve(rows, rhs)
        den = lcm(*(x.denominator for x in sol))
        return Cyclotomic._raw(n, *_normalize([int(x * den) for x in sol], den))

    def galois(self, k: int) -> "Cyclotomic":
        n = self._n
        if n == 1:
            return self
        if gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} not coprime to conductor {n}")
        k %= n
        if k == 1:
            return self
        return Cyclotomic._raw(n, *_normalize(_reduce_dense(n, self._dense(n, k)), self._den))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n == other._n:
            return self._den == other._den and self._num == other._num
        if self._n == 1 or other._n == 1:
            return (
                self.is_rational()
                and other.is_rational()
                and self._num[0] == other._num[0]
                and self._den == other._den
            )
        n = lcm(self._n, other._n)
        return self.promote(n) == other.promote(n)

    def __hash__(self) -> int:
        if self._hash is None:
            r = reduce_conductor(self)
            self._hash = hash((r._n, r._num, r._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_cyclotomic(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({format_cyclotomic(self)!r})"


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Cyclotomic.rational(x)
    return NotImplemented


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a consistent linear system over Q; free variables are set to 0."""
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in m[r:]):
        raise ArithmeticError("inconsistent linear system")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


# -- functional interface ---------------------------------------------------


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k = E(n)^k."""
    return cyc_make(n, [(k, 1)])


def cyc_make(conductor: int, terms: Iterable[tuple[int, object]]) -> Cyclotomic:
    """Build sum(c * zeta_conductor^e) from (e, c) pairs."""
    if conductor < 1:
        raise ValueError("conductor must be a positive integer")
    terms = [(e, Fraction(c)) for e, c in terms]
    den = lcm(1, *(c.denominator for _, c in terms))
    acc = [0] * conductor
    for e, c in terms:
        acc[e % conductor] += c.numerator * (den // c.denominator)
    return Cyclotomic.from_dense(conductor, acc, den)


def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyc_neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def cyc_eq(a: Cyclotomic, b: Cyclotomic) -> bool:
    return a == b


def cyc_conj(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def cyc_galois(a: Cyclotomic, k: int) -> Cyclotomic:
    return a.galois(k)


def cyc_to_rational(a: Cyclotomic) -> Fraction:
    return a.to_rational()


def cyc_sum(values: Iterable) -> Cyclotomic:
    """Sum many values, grouping by conductor before any promotion."""
    groups: dict[int, Cyclotomic] = {}
    for v in values:
        v = _coerce(v)
        cur = groups.get(v._n)
        groups[v._n] = v if cur is None else cur + v
    total = Cyclotomic.rational(0)
    for n in sorted(groups):
        total = total + groups[n]
    return total


def reduce_conductor(a: Cyclotomic) -> Cyclotomic:
    """Rewrite a at the smallest conductor whose field contains it."""
    n = a._n
    if n == 1:
        return a
    if a.is_rational():
        return Cyclotomic._raw(1, (a._num[0],), a._den)
    fixed = {k for k in range(1, n) if gcd(k, n) == 1 and a.galois(k) == a}
    for m in _divisors(n)[1:-1]:
        if m % 4 == 2:
            continue  # Q(zeta_m) = Q(zeta_{m/2}), already tried
        if all(k in fixed for k in range(1, n, m) if gcd(k, n) == 1):
            return _descend(a, m)
    return a


def _descend(a: Cyclotomic, m: int) -> Cyclotomic:
    n = a._n
    fm = _phi(m)
    cols = [zeta(m, j).promote(n)._num for j in range(fm)]
    rows = [[Fraction(cols[j][i]) for j in range(fm)] for i in range(_phi(n))]
    rhs = [Fraction(c, a._den) for c in a._num]
    sol = _solve(rows, rhs)
    den = lcm(*(x.denominator for x in sol))
    return Cyclotomic._raw(m, *_normalize([int(x * den) for x in sol], den))


# -- text form --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(E\()|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok.isspace():
            continue
        if tok not in ("E(",) and not tok.isdigit() and tok not in "+-*/^()":
            raise CycloSyntaxError(f"unexpected character {tok!r} in {text!r}")
        out.append(tok)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise CycloSyntaxError(f"expected {want} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise CycloSyntaxError(f"expected an integer in {self.text!r}, got {tok!r}")
        return int(tok)

    def expr(self) -> Cyclotomic:
        parts = [self.term()]
        while self.peek() in ("+", "-"):
            sign = self.take()
            t = self.term()
            parts.append(t if sign == "+" else -t)
        return cyc_sum(parts)

    def term(self) -> Cyclotomic:
        val = self.factor()
        while self.peek() == "*":
            self.take()
            val = val * self.factor()
        return val

    def factor(self) -> Cyclotomic:
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "E(":
            self.take()
            n = self.integer()
            self.take(")")
            k = 1
            if self.peek() == "^":
                self.take()
                neg = self.peek() == "-"
                if neg:
                    self.take()
                k = -self.integer() if neg else self.integer()
            if n < 1:
                raise CycloSyntaxError(f"E(0) in {self.text!r}")
            return zeta(n, k)
        p = self.integer()
        if self.peek() == "/":
            self.take()
            q = self.integer()
            if q == 0:
                raise CycloSyntaxError(f"zero denominator in {self.text!r}")
            return Cyclotomic.rational(Fraction(p, q))
        return Cyclotomic.rational(p)


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse integers, p/q, E(n)^k with + - * and parentheses."""
    p = _Parser(text)
    if p.peek() is None:
        raise CycloSyntaxError("empty expression")
    val = p.expr()
    if p.peek() is not None:
        raise CycloSyntaxError(f"trailing input {p.peek()!r} in {text!r}")
    return val


def format_cyclotomic(a: Cyclotomic) -> str:
    """Canonical text: reduced conductor, exponents ascending."""
    a = reduce_conductor(a)
    if a.is_rational():
        return str(Fraction(a._num[0], a._den))
    n = a._n
    pieces = []
    for e, c in enumerate(a._num):
        if not c:
            continue
        q = Fraction(c, a._den)
        if e == 0:
            pieces.append(str(q))
            continue
        mono = f"E({n})" if e == 1 else f"E({n})^{e}"
        if q == 1:
            pieces.append(mono)
        elif q == -1:
            pieces.append("-" + mono)
        else:
            pieces.append(f"{q}*{mono}")
    out = pieces[0]
    for p in pieces[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
