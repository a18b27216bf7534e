"""Root-modulus bounds and modulus-separation bounds from degree and height.

Every quantity is an exact :class:`~fractions.Fraction`.  The separation
constants are the rational variants (slightly weaker than the radical ones)
so the whole decision pipeline stays in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional

from .poly import IntPolynomial


@dataclass(frozen=True)
class BoundSet:
    c1: Fraction
    c2: Fraction
    d1: Fraction
    d2: Fraction
    d1_irreducible: Optional[Fraction] = None

    def as_dict(self) -> dict:
        out = {k: _fmt(getattr(self, k)) for k in ("c1", "c2", "d1", "d2")}
        out["d1_irreducible"] = None if self.d1_irreducible is None else _fmt(self.d1_irreducible)
        return out


@dataclass(frozen=True)
class MahlerBound:
    """Upper bound sqrt(n+1)*H on the Mahler measure, kept as an exact pair."""

    radicand: int  # n + 1
    height: int
    ceiling: int  # smallest integer >= sqrt(radicand) * height

    def __float__(self) -> float:
        return self.radicand ** 0.5 * self.height


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _pow2(e: int) -> Fraction:
    return Fraction(2**e) if e >= 0 else Fraction(1, 2 ** (-e))


def cauchy_bounds(f: IntPolynomial) -> tuple[Fraction, Fraction]:
    """(C1, C2): every root modulus lies strictly between them.

    C1 = 1/(1+H) is valid as soon as the constant term is nonzero, since
    applying the upper bound to the reversed polynomial gives
    1/|x| < 1 + H/|a_n| <= 1 + H.
    """
    if f.constant == 0:
        raise ValueError("cauchy_bounds needs a nonzero constant term; strip zero roots first")
    h = f.height
    c1 = Fraction(1, 1 + h)
    c2 = 1 + Fraction(max(abs(a) for a in f.coeffs[1:]), abs(f.leading))
    return c1, c2


@lru_cache(maxsize=4096)
def d1_value(n: int, h: int) -> Fraction:
    """2^(1-n(n-1)(n-2)/2) (n+1)^(-n(n-1)-1) H^(-2n(n-1)-1)."""
    if n < 2:
        raise ValueError("d1 needs degree >= 2")
    e = n * (n - 1)
    return _pow2(1 - e * (n - 2) // 2) / ((n + 1) ** (e + 1) * h ** (2 * e + 1))


@lru_cache(maxsize=4096)
def d1_irreducible_value(n: int, h: int) -> Fraction:
    """2^(1-n(n-1)(n-2)/2) (n+1)^(-(n-1)(n-2)-1) H^(-2(n-1)(n-2)-1), for n >= 3."""
    if n < 3:
        raise ValueError("irreducible d1 needs degree >= 3")
    e = (n - 1) * (n - 2)
    return _pow2(1 - n * e // 2) / ((n + 1) ** (e + 1) * h ** (2 * e + 1))


@lru_cache(maxsize=4096)
def d2_value(n: int, h: int) -> Fraction:
    """3 H^(1-n) (n+1)^(-n-1)."""
    if n < 2:
        raise ValueError("d2 needs degree >= 2")
    return Fraction(3, h ** (n - 1) * (n + 1) ** (n + 1))


def d1_practical(f: IntPolynomial) -> Fraction:
    return d1_value(f.degree, f.height)


def d1_irreducible_practical(f: IntPolynomial) -> Fraction:
    return d1_irreducible_value(f.degree, f.height)


def d2_practical(f: IntPolynomial) -> Fraction:
    return d2_value(f.degree, f.height)


def sep_real_irreducible(f: IntPolynomial) -> Fraction:
    """Lower bound on ||a|-|b|| for distinct-modulus real roots of an irreducible f."""
    n, h = f.degree, f.height
    if n < 2:
        raise ValueError("needs degree >= 2")
    return Fraction(1, 2 ** (n * (n - 1)) * (n + 1) ** (n - 1) * h ** (2 * (n - 1)))


def mahler_upper(f: IntPolynomial) -> MahlerBound:
    n, h = f.degree, f.height
    target = (n + 1) * h * h
    k = isqrt(target)
    if k * k < target:
        k += 1
    return MahlerBound(n + 1, h, k)


def bound_set(f: IntPolynomial) -> BoundSet:
    c1, c2 = cauchy_bounds(f)
    n = f.degree
    return BoundSet(
        c1=c1,
        c2=c2,
        d1=d1_practical(f),
        d2=d2_practical(f),
        d1_irreducible=d1_irreducible_practical(f) if n >= 3 else None,
    )
