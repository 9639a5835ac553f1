from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchquilt import (
    RadixFixed,
    bitwise_eval,
    carry_sum,
    check_coarse_limit,
    check_self_affinity,
    check_sum_decomposition,
    coarse_grain_result,
    from_code,
    from_decimal_string,
    mod_p_add,
)

from conftest import bitwise_value_oracle


OR2 = from_code(14, 2)
QUILT3 = from_code(13903, 3)
SHADE3 = from_code(9815, 3)


def ints(p, *values):
    return [RadixFixed.from_int(v, p) for v in values]


# -------------------------------------------------------- worked example


def test_or_of_5_and_11_base_2():
    r = bitwise_eval(OR2, ints(2, 5, 11), 2)
    assert r.value() == 15
    assert r.k_max == 3
    assert r.coeffs == (1, 1, 1, 1)


def test_same_string_read_in_other_radices():
    assert bitwise_eval(OR2, ints(2, 5, 11), 3).value() == 40
    assert bitwise_eval(OR2, ints(2, 5, 11), 10).value() == 1111


def test_zero_operands_give_zero():
    r = bitwise_eval(OR2, ints(2, 0, 0), 2)
    assert r.value() == 0
    assert r.k_max is None
    assert r.coeffs == ()


def test_zero_operands_with_nonzero_a0_still_empty_window():
    # k_max runs over nonzero operands only; both zero leaves no window
    r = bitwise_eval(SHADE3, ints(3, 0, 0), 7)
    assert r.value() == 0 and r.k_max is None


def test_coefficients_can_exceed_out_radix():
    # digits of 3 base 3: (0, 1); at k=0 both digits are 0 and a_0 = 2
    r = bitwise_eval(SHADE3, ints(3, 3, 3), 2)
    assert r.coeff(0) == 2
    assert r.value() == 2 + 2 * 1  # 2*2^0 + 1*2^1
    with pytest.raises(ValueError):
        r.to_radix_fixed()


def test_materialize_when_digits_are_legal():
    r = bitwise_eval(OR2, ints(2, 5, 11), 2)
    fixed = r.to_radix_fixed()
    assert fixed.value() == 15 and fixed.radix == 2


def test_operand_validation():
    with pytest.raises(ValueError):
        bitwise_eval(OR2, ints(3, 1, 1), 2)  # radix mismatch
    with pytest.raises(ValueError):
        bitwise_eval(OR2, ints(2, 1), 2)  # arity mismatch
    with pytest.raises(ValueError):
        bitwise_eval(OR2, ints(2, 1, 1), 1)  # q < 2
    with pytest.raises(ValueError):
        bitwise_eval(
            OR2,
            [from_decimal_string("1", 2, 4), from_decimal_string("1", 2, 5)],
            2,
        )  # window mismatch


@settings(max_examples=200)
@given(
    p=st.integers(min_value=2, max_value=5),
    q=st.integers(min_value=2, max_value=12),
    frac=st.integers(min_value=0, max_value=6),
    a=st.integers(min_value=0, max_value=10**6),
    b=st.integers(min_value=0, max_value=10**6),
    data=st.data(),
)
def test_value_matches_windowed_oracle(p, q, frac, a, b, data):
    code = data.draw(st.integers(min_value=0, max_value=p ** (p * p) - 1))
    op = from_code(code, p)
    xs = [RadixFixed(p, a, frac), RadixFixed(p, b, frac)]
    r = bitwise_eval(op, xs, q)
    k_hi = r.k_max if r.k_max is not None else 0
    expected = bitwise_value_oracle(
        op.table, p, q, [x.value() for x in xs], -frac, k_hi
    )
    assert r.value() == expected


# ---------------------------------------------------------- sum splitting


def test_worked_example_sum_split():
    a = from_decimal_string("5.6782", 10, 4)
    b = from_decimal_string("3.6754", 10, 4)
    g = mod_p_add(a, b)
    h = carry_sum(a, b)
    assert g.value() == Fraction("8.2436")
    assert h.value() == Fraction("1.1100")
    assert g.value() + h.value() == Fraction("9.3536")
    assert check_sum_decomposition(a, b)


def test_carry_sits_one_position_up():
    a = from_decimal_string("5.6782", 10, 4)
    b = from_decimal_string("3.6754", 10, 4)
    h = carry_sum(a, b)
    # carries from positions k = -4..0 land on k = -3..1
    assert h.frac_digits == 3
    assert h.digit_at(-2) == 1  # 8+5 >= 10 at k = -3


def test_decomposition_requires_matching_windows():
    with pytest.raises(ValueError):
        check_sum_decomposition(
            from_decimal_string("1", 10, 4), from_decimal_string("1", 10, 5)
        )
    with pytest.raises(ValueError):
        check_sum_decomposition(
            from_decimal_string("1", 10, 4), from_decimal_string("1", 2, 4)
        )


@settings(max_examples=300)
@given(
    p=st.sampled_from((2, 3, 10)),
    frac=st.integers(min_value=0, max_value=12),
    a=st.integers(min_value=0, max_value=10**9),
    b=st.integers(min_value=0, max_value=10**9),
)
def test_decomposition_property(p, frac, a, b):
    assert check_sum_decomposition(RadixFixed(p, a, frac), RadixFixed(p, b, frac))


# ----------------------------------------------------------- self-affinity


def test_scaling_doubles_and_q_scales():
    assert bitwise_eval(OR2, ints(2, 10, 22), 2).value() == 30
    assert bitwise_eval(OR2, ints(2, 10, 22), 3).value() == 120
    assert check_self_affinity(OR2, ints(2, 5, 11), 3)


def test_self_affinity_with_nonzero_a0():
    xs = [from_decimal_string("7.25", 3, 6), from_decimal_string("11.5", 3, 6)]
    assert check_self_affinity(SHADE3, xs, 7)


def test_self_affinity_zero_operands():
    assert check_self_affinity(QUILT3, ints(3, 0, 0), 5)


@settings(max_examples=200)
@given(
    p=st.sampled_from((2, 3, 5)),
    q=st.integers(min_value=2, max_value=12),
    frac=st.integers(min_value=0, max_value=8),
    a=st.integers(min_value=0, max_value=10**7),
    b=st.integers(min_value=0, max_value=10**7),
    data=st.data(),
)
def test_self_affinity_property(p, q, frac, a, b, data):
    code = data.draw(st.integers(min_value=0, max_value=p ** (p * p) - 1))
    op = from_code(code, p)
    xs = [RadixFixed(p, a, frac), RadixFixed(p, b, frac)]
    assert check_self_affinity(op, xs, q)
    scaled = bitwise_eval(op, [x.scale_by_radix_power(1) for x in xs], q)
    assert scaled.value() == q * bitwise_eval(op, xs, q).value()


# ------------------------------------------------------------ large-q law


def test_coarse_limit_digit_match_and_bound():
    xs = [from_decimal_string("7.25", 3, 6), from_decimal_string("11.5", 3, 6)]
    for q in range(3, 13):
        digit_match, rel = check_coarse_limit(QUILT3, xs, q)
        assert digit_match
        assert rel is not None and 0 <= rel < Fraction(3, q - 1)


def test_coarse_limit_deviation_matches_oracle():
    xs = [from_decimal_string("7.25", 3, 6), from_decimal_string("11.5", 3, 6)]
    values = [x.value() for x in xs]
    for q in (3, 10, 301):
        _, rel = check_coarse_limit(QUILT3, xs, q)
        b_p = bitwise_value_oracle(QUILT3.table, 3, 3, values, -6, 2)
        b_q = bitwise_value_oracle(QUILT3.table, 3, q, values, -6, 2)
        top = int(b_p / Fraction(3) ** 2)
        assert rel == (b_q - top * Fraction(q) ** 2) / (top * Fraction(q) ** 2)


def test_coarse_limit_rejects_small_q():
    with pytest.raises(ValueError):
        check_coarse_limit(QUILT3, ints(3, 1, 1), 2)


def test_coarse_limit_undefined_leading_digit():
    # top digits (1, 1) hit table entry a_4 = 0, so the anchor vanishes
    digit_match, rel = check_coarse_limit(QUILT3, ints(3, 1, 1), 5)
    assert digit_match and rel is None


def test_coarse_limit_zero_operands():
    assert check_coarse_limit(QUILT3, ints(3, 0, 0), 3) == (True, None)


# ------------------------------------------------------------- truncation


def test_truncation_drops_fine_structure():
    xs = [from_decimal_string("7.25", 3, 6), from_decimal_string("11.5", 3, 6)]
    r = bitwise_eval(SHADE3, xs, 3)
    for depth in (0, -1, -2):
        t = coarse_grain_result(r, depth)
        diff = r.value() - t.value()
        assert 0 <= diff < Fraction(3) ** (-depth)
        assert coarse_grain_result(t, depth).value() == t.value()
        assert -depth - 1 < -r.frac_digits or t.coeff(-depth - 1) == 0


def test_truncation_below_window_is_identity():
    r = bitwise_eval(SHADE3, ints(3, 4, 7), 3)
    assert coarse_grain_result(r, 5).value() == r.value()


@settings(max_examples=200)
@given(
    q=st.integers(min_value=3, max_value=9),
    frac=st.integers(min_value=0, max_value=8),
    a=st.integers(min_value=0, max_value=10**6),
    b=st.integers(min_value=0, max_value=10**6),
    depth=st.integers(min_value=-3, max_value=6),
)
def test_truncation_property(q, frac, a, b, depth):
    xs = [RadixFixed(3, a, frac), RadixFixed(3, b, frac)]
    r = bitwise_eval(QUILT3, xs, q)
    t = coarse_grain_result(r, depth)
    assert 0 <= r.value() - t.value() < Fraction(q) ** (-depth)
    # matches the floor form of the truncation operator
    step = Fraction(q) ** (-depth)
    assert t.value() == (r.value() // step) * step


# ----------------------------------------------------------------- display


def test_coeff_string():
    from patchquilt import mod_add_code

    r = bitwise_eval(OR2, ints(2, 5, 11), 2)
    assert r.coeff_string() == "1111"
    a = from_decimal_string("5.6782", 10, 4)
    b = from_decimal_string("3.6754", 10, 4)
    g = bitwise_eval(mod_add_code(10), [a, b], 10)
    assert g.coeff_string() == "8.2436"


def test_roughness_exponent():
    assert bitwise_eval(OR2, ints(2, 5, 11), 2).roughness_exponent() == 1.0
    h = bitwise_eval(QUILT3, ints(3, 5, 11), 9).roughness_exponent()
    assert h == pytest.approx(2.0)
