"""Bistritz stability test: the symmetric T-sequence and the outside-unit-circle count.

Two implementations of the same recursion live here.  ``t_recurse`` follows
the formulas literally over the rationals (used for inspection and tests).
``count_outside`` runs on integer vectors, rescaling every new member by a
positive rational; if T_k, T_{k-1} are scaled by lambda, mu > 0 then the
ratio delta_k picks up lambda/mu and T_{k-2} comes out scaled by lambda, so
every sign of T_k(1) is preserved.  The singularity patch is the one step
that mixes T_k with T_{k-1} additively, so the integer mode tracks each
member's scale and feeds lambda/mu into it.

That also means the patch depends on the scale of T_{k-1}, and at the
literal scale it can cancel T_k outright (A = X^4 - 2X^3 - X^2 + 2X - 1 does
this), which ends the run in a spurious first-type singularity.  Patching
with weight c > 0 on the added term is the literal patch applied after
replacing T_{k-1} by c T_{k-1}, a positive rescaling that leaves every sign
of T_j(1) alone.  The classifiers therefore retry with the weights in
``PATCH_WEIGHTS`` before reporting a singularity that followed a patch.

Polynomials are handled with their *formal* degree: T_k always has k+1
stored coefficients, including any leading zeros, because symmetry is
relative to the formal degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import IntPolynomial, RatPolynomial
from .sturm import sign_changes

# constant of the second-type singularity patch; any value > 2 is valid
PATCH_K = 3
# weights tried, in order, on the patch's added term (the first is the literal patch)
PATCH_WEIGHTS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5), Fraction(1, 3))

STABLE = "stable"
UNSTABLE = "unstable"
FIRST_TYPE_SINGULAR = "first_type_singular"
ONE_POINT_FAIL = "one_point_fail"


class OnePointFailure(ValueError):
    """A(1) = 0: the polynomial has the root 1 and the recursion cannot start."""


@dataclass(frozen=True)
class Patch:
    level: int  # k, the index of T_k whose neighbour T_{k-1} vanished at 0
    multiplicity: int  # q
    constant: int  # K
    weight: Fraction = Fraction(1)  # multiplier on the added term of the T_k update


@dataclass(frozen=True)
class TSequence:
    """T_n, T_{n-1}, ..., T_0 (truncated when a first-type singularity stops the recursion)."""

    polys: tuple
    patches: tuple[Patch, ...] = ()
    first_type_level: Optional[int] = None  # k with T_{k-1} identically zero

    @property
    def values_at_one(self) -> list:
        return [sum(p) for p in self.polys]

    @property
    def normal(self) -> bool:
        return not self.patches and self.first_type_level is None


@dataclass(frozen=True)
class StabilityReport:
    kind: str
    nu: Optional[int] = None
    patches: tuple[Patch, ...] = field(default=())

    @property
    def stable(self) -> bool:
        return self.kind == STABLE

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "nu": self.nu,
            "stable": self.stable,
            "patches": [
                {"level": p.level, "q": p.multiplicity, "K": p.constant, "weight": str(p.weight)}
                for p in self.patches
            ],
        }


def _coeffs(a) -> tuple:
    if isinstance(a, IntPolynomial):
        return a.coeffs
    if isinstance(a, RatPolynomial):
        return a.trimmed().coeffs
    return tuple(a)


def _int_coeffs(a) -> tuple[int, ...]:
    if isinstance(a, RatPolynomial):
        return a.to_integer().coeffs
    cs = _coeffs(a)
    if all(isinstance(c, int) for c in cs):
        return cs
    return RatPolynomial(cs).to_integer().coeffs


# ---------------------------------------------------------------------------
# shared recursion steps (work for int or Fraction entries)
# ---------------------------------------------------------------------------

def _init(a: Sequence):
    if len(a) < 2 or a[0] == 0:
        raise ValueError("need degree >= 1 with nonzero leading coefficient")
    if sum(a) == 0:
        raise OnePointFailure("A(1) = 0")
    ra = a[::-1]
    tn = [x + y for x, y in zip(a, ra)]
    diff = [x - y for x, y in zip(a, ra)]
    # synthetic division of the antisymmetric part by X - 1
    q = [diff[0]]
    for c in diff[1:-1]:
        q.append(c + q[-1])
    if q[-1] + diff[-1] != 0:
        raise AssertionError("A - A* must vanish at 1")
    return tn, q


def _patch(tk: list, tk1: list, K: int, ratio: Fraction = Fraction(1)):
    """Second-type repair of (T_k, T_{k-1}) when T_{k-1}(0) = 0, T_{k-1} != 0.

    ``ratio`` is lambda/mu when the stored members are lambda*T_k and
    mu*T_{k-1}; the added term must carry that factor.  With ratio = p/q the
    returned T_k is q*lambda times the exact patched member (T_{k-1} keeps mu).
    """
    k = len(tk) - 1
    q = 0
    while tk1[len(tk1) - 1 - q] == 0:
        q += 1
    u = tk1[q : len(tk1) - q]  # T_{k-1} = X^q U
    # (X - 1) U (X^{2q} - 1)
    xu = [0] * (len(u) + 1)
    for i, c in enumerate(u):
        xu[i] += c
        xu[i + 1] -= c
    add = [0] * (len(xu) + 2 * q)
    for i, c in enumerate(xu):
        add[i] += c
        add[i + 2 * q] -= c
    assert len(add) == k + 1
    rn, rd = ratio.numerator, ratio.denominator
    new_tk = [rd * x + rn * y for x, y in zip(tk, add)]
    # U (X^{2q} + K X^q + 1)
    new_tk1 = [0] * (len(u) + 2 * q)
    for i, c in enumerate(u):
        new_tk1[i] += c
        new_tk1[i + q] += K * c
        new_tk1[i + 2 * q] += c
    return new_tk, new_tk1, q


def _x_plus_one_times(p: list) -> list:
    out = list(p) + [0]
    for i in range(1, len(out)):
        out[i] += p[i - 1]
    return out


def _primitive_with_scale(p: list, scale: Fraction) -> tuple[list, Fraction]:
    c = 0
    for x in p:
        c = gcd(c, x)
    if c <= 1:
        return list(p), scale
    return [x // c for x in p], scale / c


def _recurse(a: Sequence, exact: bool, K: int = PATCH_K, weight: Fraction = Fraction(1)) -> TSequence:
    """Run the recursion.  In integer mode every stored member is a positive
    multiple scale_k * T_k of the exact one; the scales are tracked so that a
    second-type patch combines T_k and T_{k-1} in the right proportion."""
    tn, tn1 = _init(a)
    one = Fraction(1)
    sc = [one, one]
    if not exact:
        tn, sc[0] = _primitive_with_scale(tn, one)
        tn1, sc[1] = _primitive_with_scale(tn1, one)
    seq = [tn, tn1]
    patches = []
    k = len(a) - 1
    while True:
        tk, tk1 = seq[-2], seq[-1]
        if not any(tk1):
            return TSequence(tuple(tuple(p) for p in seq), tuple(patches), k)
        if tk1[-1] == 0:
            if exact:
                tk, tk1, q = _patch(tk, tk1, K, weight)
            else:
                ratio = weight * sc[-2] / sc[-1]
                tk, tk1, q = _patch(tk, tk1, K, ratio)
                tk, sc[-2] = _primitive_with_scale(tk, sc[-2] * ratio.denominator)
                tk1, sc[-1] = _primitive_with_scale(tk1, sc[-1])
            seq[-2], seq[-1] = tk, tk1
            patches.append(Patch(k, q, K, weight))
        if k == 1:
            break
        s, t = tk[-1], tk1[-1]
        xt = _x_plus_one_times(tk1)
        if exact:
            delta = Fraction(s) / Fraction(t)
            num = [delta * x - y for x, y in zip(xt, tk)]
        else:
            # sign(t) (s (X+1) T_{k-1} - t T_k) / X = scale_k * |t| * T_{k-2}
            if t > 0:
                num = [s * x - t * y for x, y in zip(xt, tk)]
            else:
                num = [t * y - s * x for x, y in zip(xt, tk)]
        assert num[-1] == 0 and num[0] == 0
        nxt = num[1:-1]
        if exact:
            sc.append(one)
        else:
            nxt, new_sc = _primitive_with_scale(nxt, sc[-2] * abs(t))
            sc.append(new_sc)
        seq.append(nxt)
        k -= 1
    return TSequence(tuple(tuple(p) for p in seq), tuple(patches), None)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def t_init(a) -> tuple[RatPolynomial, RatPolynomial]:
    """(T_n, T_{n-1}) = (A + A*, (A - A*)/(X - 1)), exactly."""
    cs = [Fraction(c) for c in _coeffs(a)]
    tn, tn1 = _init(cs)
    return RatPolynomial(tn), RatPolynomial(tn1)


def t_recurse(a, weight: Fraction = Fraction(1)) -> TSequence:
    """The full T-sequence over the rationals, with no rescaling."""
    return _recurse([Fraction(c) for c in _coeffs(a)], exact=True, weight=Fraction(weight))


def t_sequence_scaled(a, weight: Fraction = Fraction(1)) -> TSequence:
    """Same recursion on primitive integer members (positive rescaling only)."""
    return _recurse(list(_int_coeffs(a)), exact=False, weight=Fraction(weight))


def _classify(cs: list) -> TSequence:
    """Run the scaled recursion, retrying the patch weights while a patched run
    ends in a first-type singularity.  A singularity that survives every
    weight (or needed no patch) is reported as such."""
    for w in PATCH_WEIGHTS:
        seq = _recurse(cs, exact=False, weight=w)
        if seq.first_type_level is None or not seq.patches:
            return seq
    return seq


def _report(seq: TSequence) -> StabilityReport:
    if seq.first_type_level is not None:
        return StabilityReport(FIRST_TYPE_SINGULAR, None, seq.patches)
    nu = sign_changes(seq.values_at_one)
    if nu == 0 and not seq.patches:
        return StabilityReport(STABLE, 0, ())
    return StabilityReport(UNSTABLE, nu, seq.patches)


def count_outside(a) -> StabilityReport:
    """Classify A and, when the count is valid, give the number of roots with |z| > 1."""
    cs = _int_coeffs(a)
    if len(cs) < 2:
        raise ValueError("need degree >= 1")
    if sum(cs) == 0:
        return StabilityReport(ONE_POINT_FAIL)
    return _report(_classify(list(cs)))


def count_outside_int(cs: tuple[int, ...]) -> StabilityReport:
    """Fast entry point for callers that already hold an integer vector."""
    if sum(cs) == 0:
        return StabilityReport(ONE_POINT_FAIL)
    return _report(_classify(list(cs)))


def is_stable(a) -> bool:
    return count_outside(a).kind == STABLE
