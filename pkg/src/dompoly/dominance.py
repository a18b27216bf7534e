"""Dominance deciders.

A polynomial is dominant when it has a simple root whose modulus is larger
than the modulus of every other root.  Three certified procedures are
provided, all built from an annulus around the real root of largest modulus
followed by Bistritz tests on f(sX):

* :func:`is_dominant_simple`: one narrow annulus, then a root count outside it.
* :func:`is_dominant`: a wide annulus and a stability check first (cheap
  rejection), then narrowing and the count.
* :func:`is_dominant_irreducible`: for irreducible inputs a stability check
  at the outer radius suffices once X^m forms are excluded.

:func:`decide` is the dispatcher, with coefficient-pattern shortcuts in front.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bistritz import (
    FIRST_TYPE_SINGULAR,
    ONE_POINT_FAIL,
    STABLE,
    StabilityReport,
    count_outside_int,
)
from .bounds import d1_irreducible_value, d1_value, d2_value
from .factor import irreducible_over_q
from .poly import (
    IntPolynomial,
    exponent_gcd,
    int_negate_argument,
    int_primitive,
    int_scale_argument,
    strip_zero_roots,
)
from .sturm import Annulus, RealRootLocator

QUADRATIC = "quadratic"
FAMILY_FILTER = "family-filter"
ALG1 = "alg1"
ALG2 = "alg2"
ALG3 = "alg3"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class DominanceVerdict:
    dominant: bool
    method: str
    witness: Optional[Annulus] = None
    detail: Optional[dict] = None
    irreducible: Optional[bool] = None

    def as_dict(self) -> dict:
        return {
            "dominant": self.dominant,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.as_dict(),
            "detail": self.detail,
            "irreducible": self.irreducible,
        }


def _poly(f) -> IntPolynomial:
    if isinstance(f, IntPolynomial):
        return f
    return IntPolynomial(tuple(f))


def _scaled_report(cs: tuple[int, ...], s: Fraction) -> StabilityReport:
    rep = count_outside_int(int_primitive(int_scale_argument(cs, s.numerator, s.denominator)))
    if rep.kind == ONE_POINT_FAIL:
        # the locator never returns an endpoint that is a root of f
        raise AssertionError(f"f vanishes at annulus endpoint {s}")
    return rep


# ---------------------------------------------------------------------------
# closed form and coefficient-pattern shortcuts
# ---------------------------------------------------------------------------

def quick_quadratic(f) -> bool:
    f = _poly(f)
    if f.degree != 2:
        raise ValueError(f"quick_quadratic needs degree 2, got {f.degree}")
    a, b, c = f.coeffs
    return b != 0 and b * b - 4 * a * c > 0


def filter_family2(f) -> Optional[bool]:
    """True when |a1| > n (n+1)^(1/4) |a0|^(1/2) H^(1/2), tested as a1^4 > n^4 (n+1) a0^2 H^2."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else tuple(f)
    n = len(cs) - 1
    if n < 2:
        raise ValueError("needs degree >= 2")
    h = max(abs(c) for c in cs)
    a0, a1 = cs[0], cs[1]
    if a1**4 > n**4 * (n + 1) * a0 * a0 * h * h:
        return True
    return None


def filter_family1(f, irreducible: bool) -> Optional[bool]:
    """True for irreducible f whose lead and tail have strictly opposite signs."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else tuple(f)
    if len(cs) < 3:
        raise ValueError("needs degree >= 2")
    if not irreducible:
        return None
    if cs[0] > 0 and all(c < 0 for c in cs[1:]):
        return True
    if cs[0] < 0 and all(c > 0 for c in cs[1:]):
        return True
    return None


def _non_dominant_pattern(cs: tuple[int, ...]) -> bool:
    """c0 > 0 > c1, c_i > 0 for i >= 2, c0 >= |c1|, c_n >= c0 and c_{2i} >= c_{2i+1}.

    The pairs run over i = 1 .. (n-2)/2 for even n and i = 1 .. (n-1)/2 for odd n.
    """
    n = len(cs) - 1
    if not (cs[0] > 0 and cs[1] < 0 and all(c > 0 for c in cs[2:])):
        return False
    if cs[0] < -cs[1] or cs[n] < cs[0]:
        return False
    last = n - 2 if n % 2 == 0 else n - 1
    return all(cs[j] >= cs[j + 1] for j in range(2, last + 1, 2))


def filter_family56(f) -> Optional[bool]:
    """False when f, -f, f(-X) or -f(-X) fits the non-dominant pattern for its parity."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else tuple(f)
    if len(cs) < 3:
        raise ValueError("needs degree >= 2")
    neg_arg = int_negate_argument(cs)
    for v in (cs, tuple(-c for c in cs), neg_arg, tuple(-c for c in neg_arg)):
        if _non_dominant_pattern(v):
            return False
    return None


# ---------------------------------------------------------------------------
# the three certified procedures
# ---------------------------------------------------------------------------

def _prepare(f):
    """Strip zero roots and content; settle degree <= 1 directly."""
    f = _poly(f)
    g, k = strip_zero_roots(f)
    if g.degree == 0:
        # f = c X^k: dominant only for k == 1, and there is no nonzero root to bracket
        return None, DominanceVerdict(k == 1, TRIVIAL, None, {"zero_roots": k})
    g = g.primitive()
    if g.degree == 1:
        return None, DominanceVerdict(True, TRIVIAL, _linear_witness(g), {"zero_roots": k})
    return g, None


def _linear_witness(g: IntPolynomial) -> Annulus:
    a, b = g.coeffs
    x = abs(Fraction(b, a))
    e = x / 2
    return Annulus(x - e, x + e, 1 if -b * a > 0 else -1)


def _simple(g: IntPolynomial, loc: RealRootLocator) -> DominanceVerdict:
    d = d1_value(g.degree, g.height) / 2
    ann = loc.locate(d)
    if ann is None:
        return DominanceVerdict(False, ALG1, None, {"step": 1, "reason": "no nonzero real root"})
    rep = _scaled_report(g.coeffs, ann.r)
    if rep.kind == FIRST_TYPE_SINGULAR:
        return DominanceVerdict(False, ALG1, None, {"step": 2, "bistritz": rep.as_dict()})
    return DominanceVerdict(rep.nu == 1, ALG1, ann if rep.nu == 1 else None,
                            {"step": 3, "bistritz": rep.as_dict()})


def _outer_check(g: IntPolynomial, loc: RealRootLocator, method: str, irr) -> Optional[DominanceVerdict]:
    """Shared opening of the efficient and irreducible procedures: a wide annulus,
    then stability of f(RX).  Returns a rejection, or None to continue."""
    ann = loc.locate(d2_value(g.degree, g.height))
    if ann is None:
        return DominanceVerdict(False, method, None, {"step": "outer", "reason": "no nonzero real root"}, irr)
    rep = _scaled_report(g.coeffs, ann.R)
    if rep.kind != STABLE:
        return DominanceVerdict(False, method, None, {"step": "outer", "bistritz": rep.as_dict()}, irr)
    return None


def _finish_efficient(g: IntPolynomial, loc: RealRootLocator, irr=None) -> DominanceVerdict:
    ann = loc.locate(d1_value(g.degree, g.height) / 2)
    rep = _scaled_report(g.coeffs, ann.r)
    if rep.kind == FIRST_TYPE_SINGULAR:
        return DominanceVerdict(False, ALG2, None, {"step": "inner", "bistritz": rep.as_dict()}, irr)
    dom = rep.nu == 1
    return DominanceVerdict(dom, ALG2, ann if dom else None, {"step": "inner", "bistritz": rep.as_dict()}, irr)


def _finish_irreducible(g: IntPolynomial, loc: RealRootLocator) -> DominanceVerdict:
    n, h = g.degree, g.height
    d = d1_irreducible_value(n, h) if n >= 3 else d1_value(n, h)
    ann = loc.locate(d, strict=True)
    rep = _scaled_report(g.coeffs, ann.R)
    dom = rep.kind == STABLE
    return DominanceVerdict(dom, ALG3, ann if dom else None, {"step": "inner", "bistritz": rep.as_dict()}, True)


def _x_power_rejection(g: IntPolynomial) -> Optional[DominanceVerdict]:
    m = exponent_gcd(g)
    if m >= 2:
        return DominanceVerdict(False, ALG3, None, {"step": "x-power", "m": m}, True)
    return None


def _efficient(g: IntPolynomial, loc: RealRootLocator) -> DominanceVerdict:
    return _outer_check(g, loc, ALG2, None) or _finish_efficient(g, loc)


def _irreducible(g: IntPolynomial, loc: RealRootLocator) -> DominanceVerdict:
    return (
        _x_power_rejection(g)
        or _outer_check(g, loc, ALG3, True)
        or _finish_irreducible(g, loc)
    )


def is_dominant_simple(f) -> DominanceVerdict:
    g, done = _prepare(f)
    if done is not None:
        return done
    return _simple(g, RealRootLocator(g.coeffs))


def is_dominant(f) -> DominanceVerdict:
    g, done = _prepare(f)
    if done is not None:
        return done
    return _efficient(g, RealRootLocator(g.coeffs))


def is_dominant_irreducible(f) -> DominanceVerdict:
    """Caller guarantees f is irreducible over Q (zero roots aside, which are stripped)."""
    g, done = _prepare(f)
    if done is not None:
        return done
    # rational roots are impossible for irreducible g of degree >= 2, so no probing
    return _irreducible(g, RealRootLocator(g.coeffs, rational_probe=False))


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def _witness(g: IntPolynomial) -> Annulus:
    ann = RealRootLocator(g.coeffs).locate(d1_value(g.degree, g.height) / 2)
    assert ann is not None, "dominant polynomial without a real root"
    return ann


def decide(
    f,
    filters: bool = True,
    irreducible: Optional[bool] = None,
    witness: bool = True,
) -> DominanceVerdict:
    """Dominance of any nonzero integer polynomial.

    ``irreducible`` may pass a known irreducibility verdict for the primitive
    zero-root-free part; otherwise it is computed.  ``witness=False`` skips
    building an annulus for shortcut verdicts (the census never reads it).
    """
    g, done = _prepare(f)
    if done is not None:
        return done
    n = g.degree
    if n == 2 and filters:
        dom = quick_quadratic(g)
        return DominanceVerdict(dom, QUADRATIC, _witness(g) if dom and witness else None)
    if filters:
        if filter_family2(g):
            return DominanceVerdict(True, FAMILY_FILTER, _witness(g) if witness else None,
                                    {"family": 2})
        if filter_family56(g) is False:
            return DominanceVerdict(False, FAMILY_FILTER, None, {"family": 56})
    if irreducible is None and filters:
        # the outer check is common to both procedures, so irreducibility is only
        # worked out for inputs that survive it
        loc = RealRootLocator(g.coeffs)
        early = _outer_check(g, loc, ALG2, None)
        if early is not None:
            return early
        irr = irreducible_over_q(g.coeffs)
        if filter_family1(g, irr):
            return DominanceVerdict(True, FAMILY_FILTER, _witness(g) if witness else None,
                                    {"family": 1}, irr)
        if irr:
            return _x_power_rejection(g) or _finish_irreducible(g, loc)
        return _finish_efficient(g, loc, False)
    irr = irreducible_over_q(g.coeffs) if irreducible is None else irreducible
    if filters and filter_family1(g, irr):
        return DominanceVerdict(True, FAMILY_FILTER, _witness(g) if witness else None,
                                {"family": 1}, irr)
    if irr:
        return _irreducible(g, RealRootLocator(g.coeffs, rational_probe=False))
    v = _efficient(g, RealRootLocator(g.coeffs))
    return DominanceVerdict(v.dominant, v.method, v.witness, v.detail, False)
