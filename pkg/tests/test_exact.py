from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, strategies as st

from polyzeta.exact import PiMultiple, Rational, bernoulli, euler_number


@pytest.mark.parametrize("m, expected", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)),
                                         (3, 0), (4, Fraction(-1, 30))])
def test_bernoulli_examples(m, expected):
    assert bernoulli(m) == expected


@pytest.mark.parametrize("m", range(0, 61))
def test_bernoulli_matches_mpmath(m):
    p, q = mpmath.bernfrac(m)
    assert bernoulli(m) == Fraction(int(p), int(q))


@pytest.mark.parametrize("m, expected", [(0, 1), (2, -1), (4, 5), (6, -61), (1, 0), (7, 0)])
def test_euler_examples(m, expected):
    assert euler_number(m) == expected


@pytest.mark.parametrize("m", range(0, 41))
def test_euler_matches_mpmath(m):
    assert euler_number(m) == mpmath.eulernum(m, exact=True)


@given(st.integers(min_value=1, max_value=80))
def test_bernoulli_recurrence(m):
    assert sum(comb(m + 1, j) * bernoulli(j) for j in range(m + 1)) == 0


@given(st.integers(min_value=1, max_value=40))
def test_euler_recurrence(n):
    assert sum(comb(2 * n, 2 * j) * euler_number(2 * j) for j in range(n + 1)) == 0


@given(st.integers(min_value=1, max_value=100))
def test_odd_indices_vanish(m):
    assert bernoulli(2 * m + 1) == 0
    assert euler_number(2 * m - 1) == 0


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bernoulli(-1)
    with pytest.raises(ValueError):
        euler_number(-2)


big = st.integers(min_value=-(10**40), max_value=10**40)
nonzero = big.filter(lambda v: v != 0)


@given(big, nonzero, big, nonzero)
def test_rational_arithmetic_is_exact(a, b, c, d):
    x, y = Rational(a, b), Rational(c, d)
    assert (x + y) - y == x
    assert x.denominator > 0


def test_pimultiple_equality_and_str():
    assert PiMultiple(Fraction(2, 192), 4) == PiMultiple(Fraction(1, 96), 4)
    assert PiMultiple(Fraction(1, 96), 4) != PiMultiple(Fraction(1, 96), 3)
    assert str(PiMultiple(Fraction(1, 96), 4)) == "π^4 * 1/96"
    assert str(PiMultiple(Fraction(1, 4), 1)) == "π * 1/4"
    assert str(PiMultiple(Fraction(3, 7), 0)) == "3/7"


def test_pimultiple_arithmetic():
    x = PiMultiple(Fraction(1, 8), 2)
    assert x * 2 == PiMultiple(Fraction(1, 4), 2)
    assert 2 * x == x * 2
    assert x * x == PiMultiple(Fraction(1, 64), 4)
    assert x / 3 == PiMultiple(Fraction(1, 24), 2)


def test_pimultiple_rejects_bad_power():
    with pytest.raises(ValueError):
        PiMultiple(Fraction(1), -1)


def test_pimultiple_decimal_is_correctly_rounded():
    x = PiMultiple(Fraction(1, 6), 2)
    with mpmath.workdps(80):
        ref = mpmath.pi**2 / 6
    assert x.decimal(30) == mpmath.nstr(ref, 30, strip_zeros=False)
    assert float(x) == pytest.approx(1.6449340668482264, rel=1e-16)
