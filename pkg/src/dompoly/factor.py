"""Irreducibility over the integers for the small degrees the census needs.

The search is exhaustive over every candidate factor allowed by the
coefficient bound.  A candidate ``g`` of degree ``k`` must satisfy

* lead(g) | a0 and g(0) | an,
* |g_j| <= binom(k, j) * ceil(sqrt(n+1) * H(f))   (M(g) <= M(f) <= sqrt(n+1) H(f)),
* g(x) | f(x) at every integer x (these values are nonzero once f has no
  rational root),

and the enumeration walks the divisors of f at k-1 integer points rather than
the raw coefficient box, which visits exactly the candidates meeting all
three conditions.  Survivors are confirmed by exact trial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd
from threading import Lock
from typing import Optional

from .bounds import mahler_upper
from .poly import (
    IntPolynomial,
    int_exact_divide,
    int_primitive,
    int_value_homogeneous,
)

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"


@dataclass(frozen=True)
class FactorWitness:
    status: str
    factor: Optional[IntPolynomial] = None

    @property
    def irreducible(self) -> bool:
        return self.status == IRREDUCIBLE


@lru_cache(maxsize=65536)
def divisors(m: int) -> tuple[int, ...]:
    """Positive divisors of |m| (m != 0), ascending."""
    m = abs(m)
    if m == 0:
        raise ValueError("0 has no finite divisor set")
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return tuple(small + large[::-1])


def rational_roots(f: IntPolynomial) -> list[Fraction]:
    """All rational roots of f (needs f(0) != 0), ascending."""
    cs = f.coeffs
    if cs[-1] == 0:
        raise ValueError("rational_roots needs a nonzero constant term")
    roots = set()
    for q in divisors(cs[0]):
        for p in divisors(cs[-1]):
            for s in (p, -p):
                x = Fraction(s, q)
                if x in roots:
                    continue
                if int_value_homogeneous(cs, x.numerator, x.denominator) == 0:
                    roots.add(x)
    return sorted(roots)


def _has_rational_root(cs: tuple[int, ...]) -> Optional[Fraction]:
    for q in divisors(cs[0]):
        for p in divisors(cs[-1]):
            for s in (p, -p):
                if int_value_homogeneous(cs, s, q) == 0:
                    return Fraction(s, q)
    return None


def _probe_points(cs: tuple[int, ...], count: int) -> list[tuple[int, int]]:
    """First ``count`` integers x in 1, -1, 2, -2, ... with f(x) != 0, paired with f(x)."""
    pts = []
    x = 1
    while len(pts) < count:
        for cand in (x, -x):
            v = int_value_homogeneous(cs, cand, 1)
            if v:
                pts.append((cand, v))
                if len(pts) == count:
                    break
        x += 1
    return pts


def _solve_middle(k: int, xs: list[int]):
    """Inverse of the (k-1)x(k-1) system mapping middle coefficients b_1..b_{k-1} to
    sum_i b_i x^(k-i) at the probe points, as a Fraction matrix."""
    m = k - 1
    mat = [[Fraction(x ** (k - i)) for i in range(1, k)] for x in xs]
    inv = [[Fraction(int(r == c)) for c in range(m)] for r in range(m)]
    for col in range(m):
        piv = next(r for r in range(col, m) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        inv[col] = [v / pv for v in inv[col]]
        for r in range(m):
            if r != col and mat[r][col] != 0:
                fct = mat[r][col]
                mat[r] = [a - fct * b for a, b in zip(mat[r], mat[col])]
                inv[r] = [a - fct * b for a, b in zip(inv[r], inv[col])]
    return inv


def _factor_of_degree(cs: tuple[int, ...], k: int, bound: int) -> Optional[tuple[int, ...]]:
    a0, an = cs[0], cs[-1]
    if k == 1:
        r = _has_rational_root(cs)
        if r is None:
            return None
        return (r.denominator, -r.numerator)
    pts = _probe_points(cs, k - 1)
    xs = [x for x, _ in pts]
    inv = _solve_middle(k, xs)
    scale = 1
    for row in inv:
        for v in row:
            scale = scale * v.denominator // gcd(scale, v.denominator)
    imat = [[int(v * scale) for v in row] for row in inv]
    caps = [comb(k, j) * bound for j in range(k + 1)]
    signed_divs = [
        [s * dv for dv in divisors(v) for s in (1, -1)] for _, v in pts
    ]
    for b0 in divisors(a0):
        for dk in divisors(an):
            for bk in (dk, -dk):
                for vals in product(*signed_divs):
                    rhs = [v - b0 * x**k - bk for v, (x, _) in zip(vals, pts)]
                    mids = []
                    ok = True
                    for row, cap in zip(imat, caps[1:k]):
                        val, rem = divmod(sum(c * r for c, r in zip(row, rhs)), scale)
                        if rem or abs(val) > cap:
                            ok = False
                            break
                        mids.append(val)
                    if not ok:
                        continue
                    g = (b0, *mids, bk)
                    if int_exact_divide(cs, g) is not None:
                        return g
    return None


def is_irreducible(f: IntPolynomial) -> FactorWitness:
    """Irreducibility of a primitive integer polynomial with f(0) != 0."""
    if f.content() != 1:
        raise ValueError("input must be primitive (divide out the content first)")
    if f.constant == 0:
        raise ValueError("input must have a nonzero constant term")
    cs = f.coeffs if f.leading > 0 else tuple(-c for c in f.coeffs)
    n = len(cs) - 1
    if n <= 1:
        return FactorWitness(IRREDUCIBLE)
    bound = mahler_upper(f).ceiling
    for k in range(1, n // 2 + 1):
        g = _factor_of_degree(cs, k, bound)
        if g is not None:
            return FactorWitness(REDUCIBLE, IntPolynomial(g))
    return FactorWitness(IRREDUCIBLE)


_memo: dict[tuple[int, ...], bool] = {}
_memo_lock = Lock()
_MEMO_CAP = 1_000_000


def irreducible_over_q(coeffs: tuple[int, ...]) -> bool:
    """Irreducibility over Q of an integer polynomial (content ignored), memoised.

    Degree-0 inputs are not irreducible; X itself is; any other polynomial
    with a zero constant term is divisible by X and so is reducible.
    """
    cs = int_primitive(coeffs)
    if cs[0] < 0:
        cs = tuple(-c for c in cs)
    n = len(cs) - 1
    if n <= 0:
        return False
    if cs[-1] == 0:
        return n == 1
    if n == 1:
        return True
    hit = _memo.get(cs)
    if hit is not None:
        return hit
    res = is_irreducible(IntPolynomial(cs)).irreducible
    with _memo_lock:
        if len(_memo) >= _MEMO_CAP:
            _memo.clear()
        _memo[cs] = res
    return res


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()

