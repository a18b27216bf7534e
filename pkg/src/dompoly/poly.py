"""Exact polynomial types and the arithmetic primitives used by every other module.

Coefficients are stored dense, in descending-power order: ``(a0, a1, ..., an)``
stands for ``a0*X^n + a1*X^(n-1) + ... + an``.  Rationals are
:class:`fractions.Fraction`, so nothing in here ever rounds.

The hot paths of the decision engine work on plain ``tuple[int, ...]``
coefficient vectors; the helpers prefixed ``int_`` operate on those directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

BigRational = Fraction
Number = Union[int, Fraction]


class PolynomialParseError(ValueError):
    """Raised when polynomial text cannot be parsed."""


# ---------------------------------------------------------------------------
# integer coefficient-vector helpers (hot path)
# ---------------------------------------------------------------------------

def int_content(coeffs: Sequence[int]) -> int:
    """Nonnegative gcd of the coefficients (0 for the zero vector)."""
    return reduce(gcd, coeffs, 0)


def int_primitive(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Divide out the content. The sign is kept, so the scaling is positive."""
    c = int_content(coeffs)
    if c <= 1:
        return tuple(coeffs)
    return tuple(a // c for a in coeffs)


def int_trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Drop leading zeros; the zero polynomial becomes ``()``."""
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return tuple(coeffs[i:])


def int_negate_argument(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of f(-X)."""
    n = len(coeffs) - 1
    return tuple(a if (n - i) % 2 == 0 else -a for i, a in enumerate(coeffs))


def int_derivative(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs) - 1
    return tuple(a * (n - i) for i, a in enumerate(coeffs[:-1]))


def int_scale_argument(coeffs: Sequence[int], num: int, den: int) -> tuple[int, ...]:
    """Integer coefficients of ``den^n * f(num/den * X)`` (a positive multiple of f(sX))."""
    n = len(coeffs) - 1
    out = []
    npow = 1
    dpow = [1]
    for _ in range(n):
        dpow.append(dpow[-1] * den)
    # coefficient i is a_i * num^(n-i) * den^i
    for i in range(n, -1, -1):
        out.append(coeffs[i] * npow * dpow[i])
        npow *= num
    out.reverse()
    return tuple(out)


def int_sign_at(coeffs: Sequence[int], num: int, den: int) -> int:
    """Sign of f(num/den) for den > 0, computed with the homogenised Horner scheme."""
    v = coeffs[0]
    dp = 1
    for a in coeffs[1:]:
        dp *= den
        v = v * num + a * dp
    return (v > 0) - (v < 0)


def int_value_homogeneous(coeffs: Sequence[int], num: int, den: int) -> int:
    """``den^n * f(num/den)`` as an exact integer."""
    v = coeffs[0]
    dp = 1
    for a in coeffs[1:]:
        dp *= den
        v = v * num + a * dp
    return v


def int_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def int_exact_divide(num: Sequence[int], den: Sequence[int]) -> tuple[int, ...] | None:
    """Quotient of ``num / den`` over the integers, or ``None`` if it does not divide."""
    num = list(num)
    den = int_trim(den)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return () if not any(num) else None
    lead = den[0]
    quot = []
    for i in range(dn - dd + 1):
        c = num[i]
        if c % lead:
            return None
        q = c // lead
        quot.append(q)
        if q:
            for j in range(1, dd + 1):
                num[i + j] -= q * den[j]
    if any(num[dn - dd + 1:]):
        return None
    return tuple(quot)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

def _rat(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with exact rational coefficients (descending powers).

    Leading zeros are tolerated; ``degree`` skips them.  The zero polynomial
    is represented by an all-zero (or empty) coefficient tuple.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Number]):
        object.__setattr__(self, "coeffs", tuple(_rat(c) for c in coeffs))

    def trimmed(self) -> "RatPolynomial":
        i = 0
        while i < len(self.coeffs) and self.coeffs[i] == 0:
            i += 1
        return RatPolynomial(self.coeffs[i:]) if i else self

    @property
    def degree(self) -> int:
        """Degree after skipping leading zeros; -1 for the zero polynomial."""
        return len(self.trimmed().coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x: Number) -> Fraction:
        return evaluate(self, x)

    def _aligned(self, other: "RatPolynomial"):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a = (Fraction(0),) * (len(b) - len(a)) + a
        else:
            b = (Fraction(0),) * (len(a) - len(b)) + b
        return a, b

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self._aligned(_as_rat_poly(other))
        return RatPolynomial(x + y for x, y in zip(a, b)).trimmed()

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self._aligned(_as_rat_poly(other))
        return RatPolynomial(x - y for x, y in zip(a, b)).trimmed()

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> "RatPolynomial":
        if isinstance(other, (int, Fraction)):
            return RatPolynomial(c * other for c in self.coeffs)
        a, b = self.trimmed().coeffs, _as_rat_poly(other).trimmed().coeffs
        if not a or not b:
            return RatPolynomial(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            other = other.to_rational()
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        return self.trimmed().coeffs == other.trimmed().coeffs

    def __hash__(self) -> int:
        return hash(self.trimmed().coeffs)

    def to_integer(self) -> "IntPolynomial":
        """Positive multiple with coprime integer coefficients (same signs)."""
        p = self.trimmed()
        if not p.coeffs:
            raise ValueError("zero polynomial has no integer form")
        lcm = 1
        for c in p.coeffs:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        return IntPolynomial(int_primitive([int(c * lcm) for c in p.coeffs]))

    def __repr__(self) -> str:
        return f"RatPolynomial({[str(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial ``a0*X^n + ... + an`` with ``a0 != 0``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = tuple(int(c) for c in coeffs)
        if not cs:
            raise ValueError("polynomial needs at least one coefficient")
        if cs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_poly(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coeffs)

    @property
    def leading(self) -> int:
        return self.coeffs[0]

    @property
    def constant(self) -> int:
        return self.coeffs[-1]

    def content(self) -> int:
        return int_content(self.coeffs)

    def primitive(self) -> "IntPolynomial":
        return IntPolynomial(int_primitive(self.coeffs))

    def negate(self) -> "IntPolynomial":
        return negate(self)

    def negate_argument(self) -> "IntPolynomial":
        return negate_argument(self)

    def to_rational(self) -> RatPolynomial:
        return RatPolynomial(self.coeffs)

    def __call__(self, x: Number) -> Fraction:
        return evaluate(self, x)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def pretty(self) -> str:
        """Human-readable form such as ``X^3 - 5X + 1``."""
        n = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - i
            mag = abs(c)
            mono = "" if e == 0 else ("X" if e == 1 else f"X^{e}")
            body = str(mag) if (mag != 1 or e == 0) else ""
            term = body + mono
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


def _as_rat_poly(p) -> RatPolynomial:
    if isinstance(p, RatPolynomial):
        return p
    if isinstance(p, IntPolynomial):
        return p.to_rational()
    return RatPolynomial(p)


def _coeffs(p) -> tuple:
    return p.coeffs if isinstance(p, (IntPolynomial, RatPolynomial)) else tuple(p)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def evaluate(p, x: Number) -> Fraction:
    """Exact value p(x) by Horner's scheme."""
    x = _rat(x)
    acc = Fraction(0)
    for c in _coeffs(p):
        acc = acc * x + c
    return acc


def derivative(p) -> RatPolynomial:
    cs = _as_rat_poly(p).trimmed().coeffs
    n = len(cs) - 1
    if n <= 0:
        return RatPolynomial((0,))
    return RatPolynomial(c * (n - i) for i, c in enumerate(cs[:-1]))


def scale_argument(f, s: Number) -> RatPolynomial:
    """g(X) = f(sX) for a positive rational s."""
    s = _rat(s)
    if s <= 0:
        raise ValueError("scale factor must be positive")
    cs = _coeffs(f)
    n = len(cs) - 1
    return RatPolynomial(c * s ** (n - i) for i, c in enumerate(cs))


def reciprocal(p) -> RatPolynomial:
    """X^n p(1/X): the coefficient list reversed."""
    return RatPolynomial(tuple(reversed(_as_rat_poly(p).trimmed().coeffs)))


def negate(f: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(-c for c in f.coeffs)


def negate_argument(f: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(int_negate_argument(f.coeffs))


def strip_zero_roots(f: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Split f = X^k * g with g(0) != 0."""
    cs = f.coeffs
    k = 0
    while cs[len(cs) - 1 - k] == 0:
        k += 1
    return (IntPolynomial(cs[: len(cs) - k]) if k else f), k


def exponent_gcd(f: IntPolynomial) -> int:
    """gcd of the exponents carrying nonzero coefficients (f nonconstant)."""
    if f.degree < 1:
        raise ValueError("exponent_gcd needs a nonconstant polynomial")
    n = f.degree
    return reduce(gcd, (n - i for i, c in enumerate(f.coeffs) if c), 0)


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``"1,0,-2"`` (descending powers, whitespace ignored) into X^2 - 2."""
    body = "".join(text.split())
    if not body:
        raise PolynomialParseError("empty polynomial")
    coeffs = []
    for pos, tok in enumerate(body.split(","), start=1):
        if not tok:
            raise PolynomialParseError(f"empty coefficient at position {pos}")
        try:
            coeffs.append(int(tok, 10))
        except ValueError:
            raise PolynomialParseError(f"non-integer coefficient {tok!r} at position {pos}") from None
    if coeffs[0] == 0:
        raise PolynomialParseError("zero leading coefficient")
    return IntPolynomial(coeffs)


def format_poly(f: IntPolynomial) -> str:
    return str(f)
