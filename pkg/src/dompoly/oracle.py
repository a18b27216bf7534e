"""High-precision numeric roots with inclusion radii, for testing and diagnostics only.

Nothing in the decision pipeline imports this module.  It is an independent
second route: square-free splitting by sympy, numpy seeds, Aberth iteration
in mpmath, then a posteriori disks.

For a square-free p of degree k with distinct approximations z_1..z_k, put
w_i = p(z_i) / (a0 * prod_{j != i} (z_i - z_j)).  Every root of p lies in
the union of the disks |z - z_i| <= k |w_i|, and a connected component made
of m disks holds exactly m roots.  The radii are accepted only when all disks
(across every square-free factor) are pairwise disjoint, so each disk holds
exactly one distinct root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
import sympy

from .bounds import d1_value
from .poly import IntPolynomial

_X = sympy.Symbol("x")
MAX_PRECISION_BITS = 1 << 14


class OracleError(RuntimeError):
    """Precision escalation hit its cap without a certified answer."""


@dataclass(frozen=True)
class Root:
    value: mpmath.mpc
    multiplicity: int
    radius: Fraction  # certified: exactly one distinct root within this distance of value

    @property
    def modulus_interval(self) -> tuple[Fraction, Fraction]:
        m = _to_fraction(abs(self.value))
        return max(Fraction(0), m - self.radius - _ULP), m + self.radius + _ULP

    @property
    def is_real(self) -> bool:
        # the disk is symmetric about the real axis iff it meets it; a disk holding
        # a single root of a real polynomial and meeting the axis holds a real root
        return _to_fraction(abs(self.value.imag)) <= self.radius


@dataclass(frozen=True)
class RootCluster:
    roots: tuple[Root, ...]
    precision_bits: int

    @property
    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def real_roots(self) -> list[Root]:
        return [r for r in self.roots if r.is_real]

    def count_real_in(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in (lo, hi); raises if a disk straddles an endpoint."""
        count = 0
        for r in self.real_roots():
            x = _to_fraction(r.value.real)
            a, b = x - r.radius - _ULP, x + r.radius + _ULP
            if (a <= lo <= b) or (a <= hi <= b):
                raise OracleError("root disk straddles an interval endpoint")
            if lo < x < hi:
                count += 1
        return count

    def count_outside_unit(self) -> int:
        """Roots with |z| > 1, with multiplicity; raises if a disk meets the unit circle."""
        out = 0
        for r in self.roots:
            a, b = r.modulus_interval
            if a <= 1 <= b:
                raise OracleError("root disk meets the unit circle")
            if a > 1:
                out += r.multiplicity
        return out


# exact value of the float fudge added to every converted quantity
_ULP = Fraction(1, 1 << 4000)


def _to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp
    return Fraction(man) * (Fraction(2) ** exp)


@lru_cache(maxsize=4096)
def _sqf(coeffs: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    poly = sympy.Poly(list(coeffs), _X)
    _, parts = poly.sqf_list()
    return tuple((tuple(int(c) for c in p.all_coeffs()), m) for p, m in parts)


def _horner(cs, z):
    v = mpmath.mpc(0)
    for c in cs:
        v = v * z + c
    return v


def _aberth(cs: tuple[int, ...], prec: int) -> list:
    k = len(cs) - 1
    seeds = np.roots(np.array(cs, dtype=float))
    zs = [mpmath.mpc(complex(s)) for s in seeds]
    # spread coincident seeds so the iteration can separate them
    for i in range(k):
        for j in range(i):
            if abs(zs[i] - zs[j]) < mpmath.mpf(2) ** -40:
                zs[i] += mpmath.mpc(1e-6 * (i + 1), 1e-6 * (i + 2))
    dcs = [c * (k - i) for i, c in enumerate(cs[:-1])]
    tol = mpmath.mpf(2) ** (-prec + 16)
    for _ in range(60 + prec // 8):
        worst = mpmath.mpf(0)
        for i in range(k):
            z = zs[i]
            pz = _horner(cs, z)
            if pz == 0:
                continue
            dz = _horner(dcs, z)
            ratio = pz / dz if dz != 0 else mpmath.mpc(tol)
            s = mpmath.fsum(1 / (z - zs[j]) for j in range(k) if j != i)
            w = ratio / (1 - ratio * s)
            zs[i] = z - w
            worst = max(worst, abs(w) / max(1, abs(z)))
        if worst < tol:
            break
    return zs


def _radii(cs: tuple[int, ...], zs: list, prec: int) -> list[Fraction]:
    k = len(cs) - 1
    a0 = cs[0]
    out = []
    with mpmath.workprec(prec + 64):
        eps = mpmath.mpf(2) ** (-prec - 56)
        for i, z in enumerate(zs):
            num = abs(_horner(cs, z))
            mag = mpmath.fsum(abs(c) * abs(z) ** (k - j) for j, c in enumerate(cs))
            num += (2 * k + 2) * eps * mag
            den = abs(a0) * mpmath.fprod(abs(z - zs[j]) for j in range(k) if j != i)
            den *= 1 - k * eps
            if den <= 0:
                return []
            rad = k * num / den * (1 + 16 * eps)
            out.append(_to_fraction(rad) + _ULP)
    return out


def _disjoint(points: list, radii: list[Fraction]) -> bool:
    n = len(points)
    for i in range(n):
        for j in range(i):
            gap = _to_fraction(abs(points[i] - points[j]))
            if gap <= radii[i] + radii[j] + 2 * _ULP:
                return False
    return True


def _coeffs(f) -> tuple[int, ...]:
    return f.coeffs if isinstance(f, IntPolynomial) else tuple(f)


def numeric_roots(f, precision_bits: int = 128) -> RootCluster:
    """Every complex root of f with multiplicity and a certified radius.

    Precision doubles until each radius is below d1(f)/4 and all disks are
    disjoint.  Raises :class:`OracleError` past ``MAX_PRECISION_BITS``.
    """
    cs = _coeffs(f)
    n = len(cs) - 1
    if n < 1 or cs[0] == 0:
        raise ValueError("need a polynomial of degree >= 1")
    h = max(abs(c) for c in cs)
    target = d1_value(max(n, 2), h) / 4
    parts = _sqf(cs)
    prec = max(precision_bits, 64)
    while prec <= MAX_PRECISION_BITS:
        with mpmath.workprec(prec):
            roots, ok = [], True
            for p, mult in parts:
                if len(p) < 2:
                    continue
                zs = _aberth(p, prec)
                rads = _radii(p, zs, prec)
                if not rads or any(r >= target for r in rads):
                    ok = False
                    break
                roots.extend(Root(z, mult, r) for z, r in zip(zs, rads))
            if ok and _disjoint([r.value for r in roots], [r.radius for r in roots]):
                return RootCluster(tuple(roots), prec)
        prec *= 2
    raise OracleError(f"no certified roots for {cs} within {MAX_PRECISION_BITS} bits")


def oracle_dominant(f, precision_bits: int = 128) -> bool:
    """True iff the largest-modulus root is simple and its modulus interval
    lies strictly above every other root's."""
    cl = numeric_roots(f, precision_bits)
    top = max(cl.roots, key=lambda r: r.modulus_interval[1])
    if top.multiplicity != 1:
        return False
    lo = top.modulus_interval[0]
    return all(r is top or r.modulus_interval[1] < lo for r in cl.roots)


def real_root_count(f, lo, hi, precision_bits: int = 128) -> int:
    """Distinct real roots of f in (lo, hi)."""
    return numeric_roots(f, precision_bits).count_real_in(Fraction(lo), Fraction(hi))


def outside_unit_count(f, precision_bits: int = 128) -> int:
    """Roots with |z| > 1, counted with multiplicity."""
    return numeric_roots(f, precision_bits).count_outside_unit()
