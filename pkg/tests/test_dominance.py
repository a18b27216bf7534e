from fractions import Fraction

import pytest
from hypothesis import given

from conftest import int_polys
from dompoly.bistritz import count_outside
from dompoly.dominance import (
    ALG2,
    ALG3,
    FAMILY_FILTER,
    QUADRATIC,
    TRIVIAL,
    decide,
    filter_family1,
    filter_family2,
    filter_family56,
    is_dominant,
    is_dominant_irreducible,
    is_dominant_simple,
    quick_quadratic,
)
from dompoly.factor import irreducible_over_q
from dompoly.poly import IntPolynomial, int_negate_argument, int_scale_argument, parse_poly


def test_quick_quadratic():
    assert quick_quadratic(parse_poly("1,-1,-1"))
    assert not quick_quadratic(parse_poly("1,0,1"))
    assert not quick_quadratic(parse_poly("1,-1,2"))
    with pytest.raises(ValueError):
        quick_quadratic(parse_poly("1,0,0,1"))


def test_filter_family2():
    assert filter_family2(parse_poly("1,10,1")) is True
    assert filter_family2(parse_poly("1,1,1")) is None
    assert filter_family2(parse_poly("1,100,5,7")) is True


def test_filter_family1():
    assert filter_family1(parse_poly("1,-1,-1,-1"), True) is True
    assert filter_family1(parse_poly("1,-1,-1"), True) is True
    assert filter_family1(parse_poly("-1,1,1"), True) is True
    assert filter_family1(parse_poly("1,1,1"), True) is None
    # the pattern alone is not enough: X^2 - 1 is reducible
    assert filter_family1(parse_poly("1,-1,-1,-1"), False) is None


def test_filter_family56():
    assert filter_family56(parse_poly("1,-1,2")) is False
    assert filter_family56(parse_poly("1,-1,3,2")) is False
    assert filter_family56(parse_poly("1,-1,-1")) is None
    # mirrored forms are caught too
    assert filter_family56(parse_poly("-1,1,-3,-2")) is False
    assert filter_family56(IntPolynomial(int_negate_argument((1, -1, 3, 2)))) is False


@pytest.mark.parametrize("fn", [is_dominant_simple, is_dominant, decide])
def test_algorithm_examples(fn):
    assert fn(parse_poly("1,-1,-1")).dominant
    assert not fn(parse_poly("1,1,1,1,1")).dominant
    assert not fn(parse_poly("1,0,-1")).dominant
    assert fn(parse_poly("1,0,-5,1")).dominant
    assert not fn(parse_poly("1,2,2")).dominant
    assert fn(parse_poly("1,-2,0")).dominant


def test_efficient_negative_side_witness():
    v = is_dominant(parse_poly("1,0,-5,1"))
    assert v.dominant and v.method == ALG2 and v.witness.side == -1
    assert v.witness.r < Fraction("2.330059") and v.witness.R > Fraction("2.330058")


def test_irreducible_algorithm():
    v = is_dominant_irreducible(parse_poly("1,0,3,0,1"))
    assert not v.dominant and v.detail["step"] == "x-power"
    assert is_dominant_irreducible(parse_poly("1,-1,-1,-1")).dominant
    assert not is_dominant_irreducible(parse_poly("1,1,1,1,1")).dominant


def test_decide_examples():
    assert not decide(parse_poly("1,0,-2")).dominant
    assert decide(parse_poly("1,-3,2")).dominant
    v = decide(parse_poly("2,-5,2"))
    assert v.dominant and v.method == QUADRATIC


def test_decide_degenerate_inputs():
    assert decide(parse_poly("7")).dominant is False
    assert decide(parse_poly("3,0")).dominant is True
    assert decide(parse_poly("1,0,0")).dominant is False
    v = decide(parse_poly("1,-2,0,0"))
    assert v.dominant and v.method == TRIVIAL and v.witness.r < 2 < v.witness.R


def test_decide_methods():
    assert decide(parse_poly("1,100,5,7")).method == FAMILY_FILTER
    assert decide(parse_poly("1,-1,3,2")).method == FAMILY_FILTER
    assert decide(parse_poly("1,0,-5,1")).method == ALG3
    assert decide(parse_poly("1,0,-5,1"), filters=False).method == ALG3
    # (X - 3)(X^2 + 1): reducible, so the efficient procedure runs
    v = decide(parse_poly("1,-3,1,-3"), filters=False)
    assert v.method == ALG2 and v.dominant and v.irreducible is False


def _dominant_count_at_witness(f, v):
    cs = f.coeffs
    while cs[-1] == 0:
        cs = cs[:-1]
    return count_outside(int_scale_argument(cs, v.witness.r.numerator, v.witness.r.denominator))


@given(int_polys(min_degree=2, max_degree=5, height=30))
def test_dominant_means_one_root_outside_witness(f):
    v = decide(f)
    if v.dominant and v.witness is not None:
        assert _dominant_count_at_witness(f, v).nu == 1


@given(int_polys(min_degree=2, max_degree=5, height=30))
def test_symmetry(f):
    cs = f.coeffs
    neg = tuple(-c for c in cs)
    arg = int_negate_argument(cs)
    both = tuple(-c for c in arg)
    d = decide(f).dominant
    assert decide(neg).dominant == decide(arg).dominant == decide(both).dominant == d


@given(int_polys(min_degree=2, max_degree=5, height=30))
def test_algorithms_agree(f):
    d = decide(f, filters=False).dominant
    assert is_dominant_simple(f).dominant == d
    assert is_dominant(f).dominant == d
    assert decide(f).dominant == d
    g = f.coeffs
    while g[-1] == 0:
        g = g[:-1]
    if len(g) >= 3 and irreducible_over_q(g):
        assert is_dominant_irreducible(f).dominant == d


@given(int_polys(min_degree=2, max_degree=5, height=30))
def test_filter_soundness(f):
    full = decide(f, filters=False).dominant
    if filter_family2(f):
        assert full
    if filter_family56(f) is False:
        assert not full
    if f.constant != 0 and filter_family1(f, irreducible_over_q(f.coeffs)):
        assert full


@given(int_polys(min_degree=2, max_degree=2, height=50))
def test_quadratic_path_equivalence(f):
    assert decide(f, filters=False).dominant == quick_quadratic(f)
