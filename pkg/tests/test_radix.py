from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchquilt import (
    RadixFixed,
    coarse_grain,
    digit,
    from_decimal_string,
    mixed_radix_identity_check,
    reconstruct,
    scale_by_radix_power,
)
from patchquilt.radix import render_decimal

from conftest import digit_oracle, int_digits


# ---------------------------------------------------------------- digit


def test_pi_digits_base_10():
    x = from_decimal_string("3.1415", 10, 4)
    assert [digit(10, k, x) for k in (0, -1, -2, -3, -4)] == [3, 1, 4, 1, 5]


def test_digit_of_zero_any_radix():
    zero = RadixFixed.from_int(0, 7)
    for p in (1, 2, 3, 10):
        for k in (-3, 0, 5):
            assert digit(p, k, Fraction(0)) == 0
    assert digit(7, 0, zero) == 0


def test_digits_of_five_base_2():
    assert [digit(2, k, Fraction(5)) for k in range(4)] == [1, 0, 1, 0]


def test_radix_one_collapses_to_zero():
    assert digit(1, 0, Fraction(17, 3)) == 0
    assert digit(1, -5, Fraction(17, 3)) == 0


def test_digit_rejects_bad_inputs():
    with pytest.raises(ValueError):
        digit(0, 0, Fraction(1))
    with pytest.raises(ValueError):
        digit(10, 0, Fraction(-1))
    with pytest.raises(TypeError):
        digit(10, 0, 0.1)


def test_digit_accepts_foreign_radix_fixed():
    x = RadixFixed.from_int(5, 2)
    assert digit(10, 0, x) == 5


@given(
    p=st.integers(min_value=2, max_value=16),
    k=st.integers(min_value=-8, max_value=8),
    num=st.integers(min_value=0, max_value=10**12),
    den=st.integers(min_value=1, max_value=10**6),
)
def test_digit_matches_floor_oracle(p, k, num, den):
    x = Fraction(num, den)
    assert digit(p, k, x) == digit_oracle(p, k, x)


@given(
    p=st.integers(min_value=2, max_value=16),
    n=st.integers(min_value=0, max_value=10**9),
)
def test_integer_rebuilt_from_its_digits(p, n):
    digits = int_digits(n, p)
    assert sum(d * p**k for k, d in enumerate(digits)) == n
    assert [digit(p, k, Fraction(n)) for k in range(len(digits))] == digits


# ------------------------------------------------------- construction


def test_worked_example_parse():
    a = from_decimal_string("5.6782", 10, 4)
    assert a.digit_at(0) == 5
    assert [a.digit_at(k) for k in (-1, -2, -3, -4)] == [6, 7, 8, 2]
    assert reconstruct(a) == Fraction("5.6782")


def test_parse_truncates_with_floor_semantics():
    x = from_decimal_string("0.1", 2, 8)
    assert x.scaled == 25
    assert [x.digit_at(k) for k in range(-1, -9, -1)] == [0, 0, 0, 1, 1, 0, 0, 1]
    err = Fraction("0.1") - reconstruct(x)
    assert 0 <= err < Fraction(1, 2**8)


def test_parse_rejects_bad_text():
    for bad in ("-1", "abc", "1.2.3", ""):
        with pytest.raises(ValueError):
            from_decimal_string(bad, 10, 4)
    with pytest.raises(ValueError):
        from_decimal_string("1.5", 1, 4)


def test_from_digits_and_canonical_top():
    x = RadixFixed.from_digits(3, {0: 1, -1: 2})
    assert x.value() == Fraction(5, 3)
    assert x.top_index() == 0
    assert RadixFixed.from_int(0, 3).top_index() is None
    with pytest.raises(ValueError):
        RadixFixed.from_digits(3, {0: 3})


@given(
    p=st.integers(min_value=2, max_value=12),
    frac=st.integers(min_value=0, max_value=10),
    num=st.integers(min_value=0, max_value=10**9),
    den=st.integers(min_value=1, max_value=10**5),
)
def test_truncation_error_bound(p, frac, num, den):
    x = Fraction(num, den)
    fixed = RadixFixed.from_rational(x, p, frac)
    assert 0 <= x - fixed.value() < Fraction(1, p**frac)
    assert all(0 <= d < p for d in fixed.digits().values())


# ------------------------------------------------------ coarse grain


def test_coarse_grain_drops_fine_digits():
    x = from_decimal_string("3.1415", 10, 4)
    assert coarse_grain(x, 2).value() == Fraction("3.14")
    assert coarse_grain(x, 0).value() == 3
    assert coarse_grain(x, -1).value() == 0
    y = from_decimal_string("57.31", 10, 4)
    assert coarse_grain(y, -1).value() == 50


def test_coarse_grain_keeps_window():
    x = from_decimal_string("3.1415", 10, 4)
    g = coarse_grain(x, 2)
    assert g.frac_digits == x.frac_digits
    assert g.radix == 10


@given(
    p=st.integers(min_value=2, max_value=10),
    frac=st.integers(min_value=0, max_value=8),
    scaled=st.integers(min_value=0, max_value=10**10),
    depth=st.integers(min_value=-6, max_value=8),
)
def test_coarse_grain_is_floor_truncation(p, frac, scaled, depth):
    x = RadixFixed(p, scaled, frac)
    g = coarse_grain(x, depth)
    step = Fraction(p) ** (-depth)
    assert 0 <= x.value() - g.value() < step
    assert g.value() == (x.value() // step) * step
    assert coarse_grain(g, depth) == g


# ----------------------------------------------------------- scaling


def test_scale_by_radix_power_shifts_digits():
    x = RadixFixed.from_digits(3, {0: 1, -1: 2})
    y = scale_by_radix_power(x, 1)
    assert y.value() == 5
    assert {k: d for k, d in y.digits().items()} == {1: 1, 0: 2}


@given(
    p=st.integers(min_value=2, max_value=10),
    frac=st.integers(min_value=0, max_value=8),
    scaled=st.integers(min_value=0, max_value=10**9),
    m=st.integers(min_value=-5, max_value=5),
    k=st.integers(min_value=-10, max_value=10),
)
def test_scaling_property_of_digits(p, frac, scaled, m, k):
    x = RadixFixed(p, scaled, frac)
    y = scale_by_radix_power(x, m)
    assert y.value() == x.value() * Fraction(p) ** m
    assert y.digit_at(k + m) == x.digit_at(k)


# ------------------------------------------------------- mixed radix


def test_mixed_radix_worked_cases():
    assert mixed_radix_identity_check(2, 5, 0, Fraction(37))
    assert mixed_radix_identity_check(3, 4, -2, Fraction(1234, 999))
    assert mixed_radix_identity_check(1, 7, 3, Fraction(10))


@given(
    n=st.integers(min_value=1, max_value=8),
    p=st.integers(min_value=2, max_value=8),
    k=st.integers(min_value=-4, max_value=4),
    num=st.integers(min_value=0, max_value=10**8),
    den=st.integers(min_value=1, max_value=10**4),
)
@settings(max_examples=300)
def test_mixed_radix_identity_always_holds(n, p, k, num, den):
    assert mixed_radix_identity_check(n, p, k, Fraction(num, den))


# ----------------------------------------------------------- display


def test_digit_string_rendering():
    assert from_decimal_string("3.1415", 10, 4).digit_string() == "3.1415 (base 10)"
    assert RadixFixed.from_int(5, 2).digit_string() == "101 (base 2)"
    x = RadixFixed.from_digits(12, {0: 11, -1: 3})
    assert x.digit_string() == "11.3 (base 12)"


def test_render_decimal_truncates():
    assert render_decimal(Fraction(1, 3), 6) == "0.333333"
    assert render_decimal(Fraction(15), 3) == "15.000"
    assert render_decimal(Fraction(1, 3), 0) == "0"


def test_decimal_string_roundtrip():
    a = from_decimal_string("5.6782", 10, 4)
    assert a.decimal_string(4) == "5.6782"


def test_equality_is_by_value():
    assert RadixFixed(10, 500, 2) == RadixFixed(10, 50, 1)
    assert hash(RadixFixed(10, 500, 2)) == hash(RadixFixed(10, 50, 1))
    assert RadixFixed(10, 500, 2) != RadixFixed(2, 500, 2)
