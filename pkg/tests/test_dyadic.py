from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracvel.dyadic import DyadicRational, digit_sum, dyadic_grid
from fracvel.errors import DomainError


def test_make_reduces():
    d = DyadicRational.make(12, 4)
    assert (d.num, d.exp) == (3, 2)
    assert DyadicRational.make(0, 7) == DyadicRational(0, 0)
    assert DyadicRational.make(8, 3) == DyadicRational(1, 0)


def test_unreduced_and_out_of_range_rejected():
    with pytest.raises(ValueError):
        DyadicRational(2, 2)
    with pytest.raises(DomainError):
        DyadicRational(5, 2)


@pytest.mark.parametrize("text, digits, s", [("3/2^2", [1, 1], 2), ("5/2^3", [1, 0, 1], 2), ("0", [], 0), ("1", [], 0)])
def test_digits_and_digit_sum(text, digits, s):
    d = DyadicRational.parse(text)
    assert d.digits() == digits
    assert digit_sum(d) == s


def test_digit_sum_accepts_plain_numbers():
    assert digit_sum(0.75) == 2
    assert digit_sum(Fraction(13, 16)) == 3


def test_from_real_exact_and_truncated():
    assert DyadicRational.from_real(0.625) == DyadicRational(5, 3)
    third = DyadicRational.from_real(Fraction(1, 3))
    assert third.exp <= 53
    assert 0 <= Fraction(1, 3) - third.as_fraction() < Fraction(1, 2**53)


def test_try_exact_respects_depth():
    assert DyadicRational.try_exact(0.75, 4) == DyadicRational(3, 2)
    assert DyadicRational.try_exact(1 / 3, 48) is None
    assert DyadicRational.try_exact(Fraction(1, 3), 100) is None


def test_parse_forms():
    assert DyadicRational.parse("3/8") == DyadicRational(3, 3)
    assert DyadicRational.parse("0.5") == DyadicRational(1, 1)
    with pytest.raises(DomainError):
        DyadicRational.parse("1/3")


def test_grid():
    g = dyadic_grid(3)
    assert len(g) == 9
    assert [float(v) for v in g] == [k / 8 for k in range(9)]


@given(st.integers(0, 2**20), st.integers(20, 40))
def test_digits_reconstruct_value(k, n):
    d = DyadicRational.make(k, n)
    if d.num == 1 << d.exp:
        return
    value = sum(Fraction(b, 2 ** (i + 1)) for i, b in enumerate(d.digits()))
    assert value == Fraction(k, 2**n)
    assert d.digit_sum() == sum(d.digits())


@given(st.integers(0, 2**16), st.integers(0, 2**16))
def test_add_sub_exact(i, j):
    a, b = DyadicRational.make(i, 17), DyadicRational.make(j, 17)
    if (a + b).as_fraction() <= 1:
        assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    hi, lo = (a, b) if a.as_fraction() >= b.as_fraction() else (b, a)
    assert (hi - lo).as_fraction() == hi.as_fraction() - lo.as_fraction()
