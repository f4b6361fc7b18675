"""Interval arithmetic unit tests.

Expected digit strings were produced with mpmath at 60 significant digits
and frozen here; the library itself never touches floats, so agreement is
a genuine cross-check.
"""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovforge import (BetaValue, CReal, certified_floor, exp_fraction,
                         geometric_tail, log_fraction)
from markovforge.errors import FloorUndecidable, NotGreaterThanOne
from markovforge.intervals import (decimal_bounds, interval_from_decimals,
                                   ln2_enclosure, log_interval)

mpmath.mp.dps = 60


def contains_mp(x, mp_value, tol=Fraction(1, 10 ** 45)):
    # mpmath carries ~60 digits; compare up to that resolution
    v = Fraction(mpmath.nstr(mp_value, 50, strip_zeros=False))
    return x.lo - tol <= v <= x.hi + tol and x.width < tol


fractions_st = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=10 ** 6)


def test_exact_point():
    x = CReal.exact(Fraction(3, 7))
    assert x.lo == x.hi == Fraction(3, 7)
    assert x.width == 0


def test_arithmetic_is_exact_on_rationals():
    a = CReal.exact(Fraction(1, 3))
    b = CReal.exact(Fraction(5, 7))
    assert (a + b).lo == Fraction(22, 21)
    assert (a * b).hi == Fraction(5, 21)
    assert (a - b).lo == Fraction(-8, 21)
    assert (b / a).lo == Fraction(15, 7)


def test_pow_negative_interval():
    x = CReal(Fraction(-2), Fraction(3))
    sq = x ** 2
    assert sq.lo == 0 and sq.hi == 9
    cube = x ** 3
    assert cube.lo == -8 and cube.hi == 27


def test_certified_comparisons():
    a = CReal(Fraction(1), Fraction(2))
    b = CReal(Fraction(3), Fraction(4))
    assert a.certainly_lt(3)
    assert b.certainly_gt(2)
    assert not a.certainly_gt(Fraction(3, 2))
    assert a.contains(Fraction(3, 2))
    assert not a.contains(Fraction(5, 2))


def test_round_outward_encloses():
    x = CReal(Fraction(1, 3), Fraction(2, 3))
    r = x.round_outward(16)
    assert r.lo <= x.lo and r.hi >= x.hi
    assert r.lo.denominator & (r.lo.denominator - 1) == 0  # dyadic


def test_exp_known_values():
    e1 = exp_fraction(1, 256)
    assert contains_mp(e1, mpmath.e)
    assert e1.width < Fraction(1, 10 ** 70)
    e07 = exp_fraction(Fraction(7, 10), 256)
    assert contains_mp(e07, mpmath.exp(mpmath.mpf(7) / 10))
    em = exp_fraction(Fraction(-3, 2), 256)
    assert contains_mp(em, mpmath.exp(mpmath.mpf(-3) / 2))


def test_log_known_values():
    l2 = ln2_enclosure(256)
    assert contains_mp(l2, mpmath.log(2))
    l3 = log_fraction(3, 256)
    assert contains_mp(l3, mpmath.log(3))
    lhalf = log_fraction(Fraction(1, 2), 256)
    assert contains_mp(lhalf, -mpmath.log(2))


def test_log_interval_monotone():
    x = CReal(Fraction(2), Fraction(3))
    lg = log_interval(x, 128)
    ln2 = Fraction(mpmath.nstr(mpmath.log(2), 40))
    ln3 = Fraction(mpmath.nstr(mpmath.log(3), 40))
    eps = Fraction(1, 10 ** 30)
    assert lg.lo <= ln2 + eps and lg.hi >= ln3 - eps
    assert lg.hi - lg.lo < ln3 - ln2 + Fraction(1, 10 ** 20)


def test_certified_floor_exact_and_refined():
    assert certified_floor(CReal.exact(Fraction(7, 2))) == 3
    assert certified_floor(CReal.exact(-3)) == -3
    # wide interval plus a refinement callback that sharpens it
    wide = CReal(Fraction(2, 1), Fraction(3, 1))
    assert certified_floor(wide, refine=lambda b: CReal.exact(Fraction(5, 2))) == 2


def test_certified_floor_undecidable():
    # an enclosure that straddles an integer and cannot be refined
    wide = CReal(Fraction(9, 10), Fraction(11, 10))
    with pytest.raises(FloorUndecidable):
        certified_floor(wide)


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100),
                    max_denominator=1000),
       st.integers(min_value=0, max_value=20),
       st.sampled_from(["1", "n", "n2"]))
@settings(max_examples=60, deadline=None)
def test_geometric_tail_dominates_partial_sums(r, s, weight):
    tail = geometric_tail(r, s, weight)
    partial = Fraction(0)
    for n in range(s, s + 40):
        w = {"1": 1, "n": n, "n2": n * n}[weight]
        partial += w * r ** n
    assert tail.hi >= partial
    # and it cannot exceed the partial sum plus the remaining tail
    assert tail.lo <= partial + geometric_tail(r, s + 40, weight).hi


@given(fractions_st, fractions_st)
@settings(max_examples=80, deadline=None)
def test_interval_ops_contain_rational_truth(p, q):
    a = CReal.exact(p).round_outward(24)
    b = CReal.exact(q).round_outward(24)
    assert (a + b).contains(p + q)
    assert (a - b).contains(p - q)
    assert (a * b).contains(p * q)
    if not (b.lo <= 0 <= b.hi):
        assert (a / b).contains(p / q)


@given(fractions_st, st.integers(min_value=0, max_value=6))
@settings(max_examples=60, deadline=None)
def test_pow_contains_truth(p, n):
    x = CReal.exact(p).round_outward(24)
    assert (x ** n).contains(p ** n)


def test_beta_value_forms():
    assert BetaValue.parse("2").is_integer
    assert BetaValue.parse("5/2").value == Fraction(5, 2)
    assert BetaValue.parse("2.5").value == Fraction(5, 2)
    b = BetaValue.parse("e^7/10")
    x = b.eval(256)
    assert contains_mp(x, mpmath.exp(mpmath.mpf(7) / 10))


def test_beta_must_exceed_one():
    with pytest.raises(NotGreaterThanOne):
        BetaValue.parse("1").eval(64)
    with pytest.raises(NotGreaterThanOne):
        BetaValue.parse("1/2").eval(64)
    with pytest.raises(NotGreaterThanOne):
        BetaValue.parse("e^0").eval(64)


def test_decimal_bounds_outward_and_idempotent():
    x = exp_fraction(Fraction(7, 10), 256)
    lo, hi = decimal_bounds(x)
    back = interval_from_decimals(lo, hi)
    assert back.lo <= x.lo and back.hi >= x.hi
    assert decimal_bounds(back) == (lo, hi)


@given(fractions_st)
@settings(max_examples=60, deadline=None)
def test_decimal_round_trip_encloses(p):
    x = CReal.exact(p)
    lo, hi = decimal_bounds(x)
    assert interval_from_decimals(lo, hi).contains(p)
