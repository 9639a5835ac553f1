"""The generalized digitwise operator on real operands, and its exact laws.

b_q applies an N-ary digit operator independently at every digit position
of its radix-p operands and reads the resulting coefficient string in
powers of q. Everything here is exact: values materialize as rationals,
and each law (sum decomposition, self-affine digit shift, coarse-radix
limit, truncation bound) is implemented as a falsifiable check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .magma import MagmaOp, carry_code, mod_add_code
from .radix import RadixFixed

__all__ = [
    "BitwiseResult",
    "bitwise_eval",
    "mod_p_add",
    "carry_sum",
    "check_sum_decomposition",
    "check_self_affinity",
    "check_coarse_limit",
    "coarse_grain_result",
]


class BitwiseResult:
    """Digit coefficients of one b_q evaluation, on the window [-F, k_max].

    coeffs[t] is the coefficient of q**(t - frac_digits); coefficients come
    from the operator table, so they lie in [0, p-1] and are valid radix-q
    digits only when q >= p. k_max is None when every operand is zero (the
    coefficient string is then empty and the value is 0).
    """

    __slots__ = ("op", "out_radix", "frac_digits", "k_max", "coeffs", "operands")

    def __init__(
        self,
        op: MagmaOp,
        out_radix: int,
        frac_digits: int,
        k_max: int | None,
        coeffs: tuple[int, ...],
        operands: tuple[RadixFixed, ...],
    ):
        self.op = op
        self.out_radix = out_radix
        self.frac_digits = frac_digits
        self.k_max = k_max
        self.coeffs = coeffs
        self.operands = operands

    def coeff(self, k: int) -> int:
        t = k + self.frac_digits
        if 0 <= t < len(self.coeffs):
            return self.coeffs[t]
        return 0

    def scaled_integer(self) -> int:
        """sum(coeff_t * q**t): the value numerator over denominator q**F."""
        acc = 0
        for t in reversed(range(len(self.coeffs))):
            acc = acc * self.out_radix + self.coeffs[t]
        return acc

    def value(self) -> Fraction:
        """Exact value sum(coeff_k * q**k)."""
        n = self.scaled_integer()
        if self.frac_digits >= 0:
            return Fraction(n, self.out_radix**self.frac_digits)
        return Fraction(n * self.out_radix**-self.frac_digits)

    def to_radix_fixed(self) -> RadixFixed:
        """Materialize as a radix-q fixed-point number.

        Valid only when every coefficient is a legal radix-q digit, which
        the evaluation guarantees for q >= p.
        """
        if any(c >= self.out_radix for c in self.coeffs):
            raise ValueError(
                f"coefficients exceed radix {self.out_radix}; "
                "the string is a polynomial in q, not a radix-q numeral"
            )
        return RadixFixed(self.out_radix, self.scaled_integer(), self.frac_digits)

    def roughness_exponent(self) -> float:
        """H = log_p(q), the scaling exponent of the generated surface."""
        if self.out_radix == self.op.radix:
            return 1.0
        return math.log(self.out_radix) / math.log(self.op.radix)

    def coeff_string(self) -> str:
        """Coefficients from k_max down to the window floor, radix point
        marked when the window extends below index 0."""
        if self.k_max is None:
            return "0"
        sep = "," if self.op.radix > 10 else ""
        ints = sep.join(str(self.coeff(k)) for k in range(max(self.k_max, 0), -1, -1))
        if self.frac_digits <= 0:
            return ints
        fracs = sep.join(
            str(self.coeff(k)) for k in range(-1, -self.frac_digits - 1, -1)
        )
        return f"{ints}.{fracs}"

    def __repr__(self) -> str:
        return (
            f"BitwiseResult(q={self.out_radix}, k_max={self.k_max}, "
            f"frac_digits={self.frac_digits}, value={self.value()})"
        )


def bitwise_eval(
    op: MagmaOp, operands: Sequence[RadixFixed], q: int
) -> BitwiseResult:
    """Evaluate the digitwise operator over its operands in output radix q.

    Coefficient at index k is op applied to the k-th digits of all operands,
    for k from the shared window floor -F up to k_max (the top digit index
    among nonzero operands). All operands must share the radix p of the
    operator and the same fractional depth F.
    """
    if q < 2:
        raise ValueError(f"output radix must be >= 2, got {q}")
    if len(operands) != op.arity:
        raise ValueError(
            f"operator arity is {op.arity}, got {len(operands)} operands"
        )
    p = op.radix
    for u in operands:
        if u.radix != p:
            raise ValueError(f"operand radix {u.radix} != operator radix {p}")
    frac = operands[0].frac_digits if operands else 0
    for u in operands[1:]:
        if u.frac_digits != frac:
            raise ValueError(
                "operands must share the same fractional depth; "
                f"got {frac} and {u.frac_digits}"
            )
    tops = [u.top_index() for u in operands if not u.is_zero()]
    if not tops:
        return BitwiseResult(op, q, frac, None, (), tuple(operands))
    k_max = max(tops)

    table = op.table
    mantissas = [u.scaled for u in operands]
    coeffs = []
    for _ in range(-frac, k_max + 1):
        index = 0
        weight = 1
        for i, m in enumerate(mantissas):
            m, d = divmod(m, p)
            mantissas[i] = m
            index += weight * d
            weight *= p
        coeffs.append(table[index])
    return BitwiseResult(op, q, frac, k_max, tuple(coeffs), tuple(operands))


def mod_p_add(a: RadixFixed, b: RadixFixed) -> RadixFixed:
    """Carry-free digitwise sum: each digit pair added mod p, no carries."""
    r = bitwise_eval(mod_add_code(_shared_radix(a, b)), [a, b], q=a.radix)
    return r.to_radix_fixed()


def carry_sum(a: RadixFixed, b: RadixFixed) -> RadixFixed:
    """The carry complement of mod_p_add: each digit pair's carry, shifted
    one position up, so that a + b == mod_p_add(a, b) + carry_sum(a, b)."""
    r = bitwise_eval(carry_code(_shared_radix(a, b)), [a, b], q=a.radix)
    return r.to_radix_fixed().scale_by_radix_power(1)


def _shared_radix(a: RadixFixed, b: RadixFixed) -> int:
    if a.radix != b.radix:
        raise ValueError(f"radix mismatch: {a.radix} != {b.radix}")
    return a.radix


def check_sum_decomposition(a: RadixFixed, b: RadixFixed) -> bool:
    """Exact check that a + b == (a +_p b) + (a carry+_p b)."""
    p = _shared_radix(a, b)
    if a.frac_digits != b.frac_digits:
        raise ValueError("operands must share the same fractional depth")
    g = mod_p_add(a, b)
    h = carry_sum(a, b)
    # common denominator p**F: compare scaled integers, no rational overhead
    lhs = a.scaled + b.scaled
    rhs = g.scaled + p * h.scaled
    return lhs == rhs and a.value() + b.value() == g.value() + h.value()


def check_self_affinity(
    op: MagmaOp, operands: Sequence[RadixFixed], q: int
) -> bool:
    """Verify the self-affine law at the digit level and on exact values:

    scaling every operand by p shifts the whole coefficient string up one
    index, hence b_q(p*u_0, ...) == q * b_q(u_0, ...) exactly. The roughness
    exponent of the induced surface is H = log_p(q).
    """
    base = bitwise_eval(op, list(operands), q)
    scaled = bitwise_eval(op, [u.scale_by_radix_power(1) for u in operands], q)
    if base.k_max is None:
        digit_shift = scaled.k_max is None
    else:
        digit_shift = (
            scaled.k_max == base.k_max + 1
            and scaled.frac_digits == base.frac_digits - 1
            and scaled.coeffs == base.coeffs
        )
    return digit_shift and scaled.value() == q * base.value()


def check_coarse_limit(
    op: MagmaOp, operands: Sequence[RadixFixed], q: int
) -> tuple[bool, Fraction | None]:
    """Check the large-q limit of b_q against b_p.

    Returns (digit_match, rel_deviation):

    * digit_match: the radix-q digits of the materialized value equal the
      coefficient string (requires q >= p, where coefficients are legal
      radix-q digits).
    * rel_deviation: (b_q - floor(b_p / p**k_max) * q**k_max) divided by
      that leading term. Nonnegative, shrinks as q grows, and certified
      < p/(q-1) whenever defined. None when the leading coefficient is
      zero (the deviation is then undefined) or all operands are zero.
    """
    p = op.radix
    if q < p:
        raise ValueError(f"requires q >= p ({q} < {p})")
    bq = bitwise_eval(op, list(operands), q)
    if bq.k_max is None:
        return True, None

    # radix-q digits of the exact value, read off the scaled integer
    n = bq.scaled_integer()
    digits = []
    while n:
        n, d = divmod(n, q)
        digits.append(d)
    stored = list(bq.coeffs)
    while stored and stored[-1] == 0:
        stored.pop()
    digit_match = digits == stored

    bp = bitwise_eval(op, list(operands), p)
    leading = bp.value() / Fraction(p) ** bq.k_max
    leading_digit = leading.numerator // leading.denominator
    if leading_digit == 0:
        return digit_match, None
    anchor = leading_digit * Fraction(q) ** bq.k_max
    rel_deviation = (bq.value() - anchor) / anchor
    return digit_match, rel_deviation


def coarse_grain_result(r: BitwiseResult, depth: int) -> BitwiseResult:
    """Zero every coefficient below index -depth: q**-D * floor(q**D * b_q).

    The value decreases by strictly less than q**-depth (for q >= p).
    """
    cut = r.frac_digits - depth
    if cut <= 0 or not r.coeffs:
        return r
    kept = (0,) * min(cut, len(r.coeffs)) + r.coeffs[cut:]
    return BitwiseResult(
        r.op, r.out_radix, r.frac_digits, r.k_max, kept, r.operands
    )
