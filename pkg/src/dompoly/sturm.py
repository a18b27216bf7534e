"""Sturm chains, real-root counting and the bisection search for the largest real root.

Chain members are kept as primitive integer polynomials.  Every rescaling
uses a positive factor, which leaves all sign counts untouched.

Interval endpoints inside the bisection loop are carried as integer
numerators over one shared positive denominator, so a midpoint costs a
shift and no gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import cauchy_bounds
from .poly import (
    IntPolynomial,
    RatPolynomial,
    int_derivative,
    int_negate_argument,
    int_primitive,
    int_sign_at,
    int_trim,
)

# (numerator of a, numerator of b, shared denominator)
Bracket = tuple[int, int, int]


def _int_coeffs(f) -> tuple[int, ...]:
    if isinstance(f, IntPolynomial):
        return f.coeffs
    if isinstance(f, RatPolynomial):
        return f.to_integer().coeffs
    return tuple(f)


def _neg_prem(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Primitive positive multiple of -rem(a, b); ``()`` when b divides a."""
    r = list(a)
    lb = b[0]
    m = abs(lb)
    s = 1 if lb > 0 else -1
    db = len(b) - 1
    for i in range(len(r) - db):
        c = r[i]
        if c:
            cs = c * s
            for j in range(i, len(r)):
                r[j] *= m
            for j in range(db + 1):
                r[i + j] -= cs * b[j]
    rem = int_trim(r[len(r) - db:])
    if not rem:
        return ()
    return int_primitive([-x for x in rem])


@dataclass(frozen=True)
class SturmChain:
    """p0 = f, p1 = f', p_{k} = -rem(p_{k-2}, p_{k-1}), each up to a positive factor."""

    polys: tuple[tuple[int, ...], ...]

    @property
    def members(self) -> list[IntPolynomial]:
        return [IntPolynomial(p) for p in self.polys]

    def sigma_at(self, num: int, den: int) -> int:
        """Sign changes of p_0(x), ..., p_m(x) at x = num/den (den > 0)."""
        maxdeg = len(self.polys[0]) - 1
        pw = [1] * (maxdeg + 1)
        for i in range(1, maxdeg + 1):
            pw[i] = pw[i - 1] * den
        changes = 0
        prev = 0
        for p in self.polys:
            v = p[0]
            for i in range(1, len(p)):
                v = v * num + p[i] * pw[i]
            if v:
                sgn = 1 if v > 0 else -1
                if prev and sgn != prev:
                    changes += 1
                prev = sgn
        return changes

    def sigma(self, x: Fraction) -> int:
        x = Fraction(x)
        return self.sigma_at(x.numerator, x.denominator)


def build_chain(f) -> SturmChain:
    p0 = int_primitive(_int_coeffs(f))
    if len(p0) < 2:
        raise ValueError("Sturm chain needs degree >= 1")
    polys = [p0, int_primitive(int_derivative(p0))]
    while True:
        nxt = _neg_prem(polys[-2], polys[-1])
        if not nxt:
            break
        polys.append(nxt)
    return SturmChain(tuple(polys))


def sign_changes(values: Sequence) -> int:
    """Number of neighbouring opposite-sign pairs once zeros are deleted."""
    changes = 0
    prev = 0
    for v in values:
        if v:
            sgn = 1 if v > 0 else -1
            if prev and sgn != prev:
                changes += 1
            prev = sgn
    return changes


def count_real_roots_in(chain: SturmChain, a, b) -> int:
    """Distinct real roots of chain's p0 in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    f = chain.polys[0]
    for x in (a, b):
        if int_sign_at(f, x.numerator, x.denominator) == 0:
            raise ValueError(f"endpoint {x} is a root; nudge it first")
    return chain.sigma(a) - chain.sigma(b)


def _search(
    f: tuple[int, ...],
    chain: SturmChain,
    A: int,
    B: int,
    D: int,
    d: Fraction,
    strict: bool = False,
    avoid: Optional[tuple[int, ...]] = None,
) -> Optional[Bracket]:
    """Bisection for the largest root of f in (A/D, B/D).

    Loop guard is ``b - a > d`` (``>= d`` when ``strict``).  When the
    interval holds exactly one distinct root across which f changes sign,
    the branch decision is made from the sign of f alone; it picks the same
    half the Sturm count would.  ``avoid`` is a second polynomial that must
    not vanish at a left endpoint produced by the root-at-midpoint step.
    """
    sa = chain.sigma_at(A, D)
    sb = chain.sigma_at(B, D)
    if sa == sb:
        return None
    dn, dd = d.numerator, d.denominator
    fb = int_sign_at(f, B, D)
    single = sa - sb == 1 and int_sign_at(f, A, D) != fb

    while True:
        gap = (B - A) * dd
        lim = dn * D
        if not (gap >= lim if strict else gap > lim):
            return A, B, D
        A, B, D = 2 * A, 2 * B, 2 * D
        C = (A + B) >> 1
        fc = int_sign_at(f, C, D)
        if fc == 0:
            # midpoint is a root: a = c - d/2 (halve the offset while it lands on a root)
            k = 1
            while True:
                scale = (1 << k) * dd
                A2 = C * scale - dn * D
                D2 = D * scale
                if int_sign_at(f, A2, D2) != 0 and (
                    avoid is None or int_sign_at(avoid, A2, D2) != 0
                ):
                    break
                k += 1
            A, B, D = A2, B * scale, D2
            sa = chain.sigma_at(A, D)
            sb = chain.sigma_at(B, D)
            single = sa - sb == 1 and int_sign_at(f, A, D) != fb
            continue
        if single:
            if fc != fb:
                A = C
            else:
                B, fb = C, fc
            continue
        sc = chain.sigma_at(C, D)
        if sc != sb:
            A, sa = C, sc
        else:
            B, sb, fb = C, sc, fc
        if sa - sb == 1 and int_sign_at(f, A, D) != fb:
            single = True


def locate_largest_in(f, a, b, d, strict: bool = False) -> Optional[tuple[Fraction, Fraction]]:
    """Bracket the largest root of f in (a, b) to width <= d (< d when strict).

    Returns ``None`` when f has no root in (a, b).
    """
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if d <= 0:
        raise ValueError("need d > 0")
    coeffs = int_primitive(_int_coeffs(f))
    den = a.denominator * b.denominator
    A, B = a.numerator * b.denominator, b.numerator * a.denominator
    for num in (A, B):
        if int_sign_at(coeffs, num, den) == 0:
            raise ValueError("interval endpoint is a root")
    res = _search(coeffs, build_chain(coeffs), A, B, den, d, strict)
    if res is None:
        return None
    return Fraction(res[0], res[2]), Fraction(res[1], res[2])


@dataclass(frozen=True)
class Annulus:
    """r < |z| < R bracketing the largest-modulus real root; ``side`` is its sign."""

    r: Fraction
    R: Fraction
    side: int

    @property
    def width(self) -> Fraction:
        return self.R - self.r

    def as_dict(self) -> dict:
        return {
            "r": f"{self.r.numerator}/{self.r.denominator}",
            "R": f"{self.R.numerator}/{self.R.denominator}",
            "side": "+" if self.side > 0 else "-",
        }


class _Exact:
    """A side whose extreme root is a known rational point x."""

    __slots__ = ("x",)

    def __init__(self, x: Fraction):
        self.x = x


class RealRootLocator:
    """Two-sided search for the real root of largest modulus, with narrowing.

    The first :meth:`locate` call brackets the largest positive root inside
    (C1, C2), then looks for roots of f(-X) strictly beyond that bracket.
    Later calls with a smaller width narrow the brackets already found and
    repeat the negative-side check past the new positive bracket.

    Returned endpoints r, R never satisfy f(r) = 0 or f(R) = 0.  With
    ``rational_probe=False`` the check for -X = lower being an exact root is
    skipped, which is safe only when f has no rational root.
    """

    def __init__(self, f, rational_probe: bool = True):
        coeffs = int_primitive(_int_coeffs(f))
        if len(coeffs) < 2:
            raise ValueError("need degree >= 1")
        if coeffs[-1] == 0:
            raise ValueError("zero constant term; strip zero roots first")
        self.f = coeffs
        self.sides = {1: coeffs, -1: int_negate_argument(coeffs)}
        self._chains: dict[int, SturmChain] = {}
        c1, c2 = cauchy_bounds(IntPolynomial(coeffs))
        self.c1 = c1
        # C2 is a strict bound, so this only guards against misuse
        while any(int_sign_at(p, c2.numerator, c2.denominator) == 0 for p in self.sides.values()):
            c2 += 1
        self.c2 = c2
        self._state: Optional[dict] = None
        self.rational_probe = rational_probe

    def chain(self, side: int) -> SturmChain:
        ch = self._chains.get(side)
        if ch is None:
            ch = self._chains[side] = build_chain(self.sides[side])
        return ch

    def _search_side(self, side: int, lo: Fraction, hi: Fraction, d: Fraction, strict: bool):
        den = lo.denominator * hi.denominator
        res = _search(
            self.sides[side],
            self.chain(side),
            lo.numerator * hi.denominator,
            hi.numerator * lo.denominator,
            den,
            d,
            strict,
            self.sides[-side],
        )
        return res

    def _exact_bracket(self, side: int, x: Fraction, d: Fraction, strict: bool) -> Bracket:
        e = d / 4 if strict else d / 2
        while True:
            lo, hi = x - e, x + e
            if lo > 0 and all(
                int_sign_at(p, y.numerator, y.denominator)
                for p in self.sides.values()
                for y in (lo, hi)
            ):
                den = lo.denominator * hi.denominator
                return lo.numerator * hi.denominator, hi.numerator * lo.denominator, den
            e /= 2

    def _refine(self, side: int, br, d: Fraction, strict: bool):
        if isinstance(br, _Exact):
            return br, self._exact_bracket(side, br.x, d, strict)
        A, B, D = br
        out = _search(self.sides[side], self.chain(side), A, B, D, d, strict, self.sides[-side])
        return out, out

    def _negative_beyond(self, lower: Fraction, d: Fraction, strict: bool):
        """Largest root of f(-X) in [lower, C2) as (state, bracket) or (None, None)."""
        neg = self.sides[-1]
        hi = self.c2
        if lower >= hi:
            return None, None
        if self.rational_probe and int_sign_at(neg, lower.numerator, lower.denominator) == 0:
            br = self._search_side(-1, lower, hi, d, strict)
            if br is not None:
                return br, br
            ex = _Exact(lower)
            return ex, self._exact_bracket(-1, lower, d, strict)
        br = self._search_side(-1, lower, hi, d, strict)
        return br, br

    def locate(self, d, strict: bool = False) -> Optional[Annulus]:
        d = Fraction(d)
        if d <= 0:
            raise ValueError("need d > 0")
        st = self._state
        if st is None:
            pos_state = self._search_side(1, self.c1, self.c2, d, strict)
            pos_br = pos_state
            lower = Fraction(pos_br[1], pos_br[2]) if pos_br else self.c1
            neg_state, neg_br = self._negative_beyond(lower, d, strict)
        else:
            if st["pos"] is None and st["neg"] is None:
                return None
            pos_state = pos_br = None
            if st["pos"] is not None:
                pos_state, pos_br = self._refine(1, st["pos"], d, strict)
            if st["neg"] is not None:
                neg_state, neg_br = self._refine(-1, st["neg"], d, strict)
            else:
                lower = Fraction(pos_br[1], pos_br[2])
                neg_state, neg_br = self._negative_beyond(lower, d, strict)
        self._state = {"pos": pos_state, "neg": neg_state}
        if neg_br is not None:
            return Annulus(Fraction(neg_br[0], neg_br[2]), Fraction(neg_br[1], neg_br[2]), -1)
        if pos_br is not None:
            return Annulus(Fraction(pos_br[0], pos_br[2]), Fraction(pos_br[1], pos_br[2]), 1)
        return None


def locate_extreme_real_root(f, d, strict: bool = False) -> Optional[Annulus]:
    """Annulus of width <= d around the real root of f with largest modulus.

    ``None`` when f has no nonzero real root.  Requires f(0) != 0.
    """
    return RealRootLocator(f).locate(d, strict)
