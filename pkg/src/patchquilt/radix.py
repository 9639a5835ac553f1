"""Exact fixed-point numbers in an arbitrary radix, and the digit function.

All arithmetic here is exact. Values enter as decimal strings or rationals
and are truncated (never rounded) to a fixed number of fractional digits in
the working radix, so digit extraction is bit-true and never contaminated
by binary floating point. Floats are rejected outright.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

__all__ = [
    "DEFAULT_FRAC_DIGITS",
    "RadixFixed",
    "digit",
    "from_decimal_string",
    "reconstruct",
    "coarse_grain",
    "scale_by_radix_power",
    "mixed_radix_identity_check",
]

DEFAULT_FRAC_DIGITS = 12

Rational = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    """Coerce an exact numeric input to Fraction; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(
            "binary floats carry representation error; "
            "use a decimal string or Fraction instead"
        )
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _floor_div_power(value: Fraction, base: int, k: int) -> int:
    """floor(value / base**k) for exact rational value and integer k."""
    num, den = value.numerator, value.denominator
    if k >= 0:
        return num // (den * base**k)
    return (num * base**-k) // den


class RadixFixed:
    """A nonnegative number stored as its radix-p digits on a finite window.

    Internally the number is a scaled integer: value = scaled / p**frac_digits.
    The digit at index k is then the base-p digit of `scaled` at position
    k + frac_digits; digits outside the stored window are zero. frac_digits
    may be negative (the window floor sits above the radix point), which is
    what an exact upward digit shift produces.
    """

    __slots__ = ("radix", "scaled", "frac_digits")

    def __init__(self, radix: int, scaled: int, frac_digits: int = 0):
        if not isinstance(radix, int) or radix < 2:
            raise ValueError(f"radix must be an integer >= 2, got {radix!r}")
        if not isinstance(scaled, int) or isinstance(scaled, bool):
            raise TypeError("scaled mantissa must be an int")
        if scaled < 0:
            raise ValueError("negative values are not supported")
        if not isinstance(frac_digits, int) or isinstance(frac_digits, bool):
            raise TypeError("frac_digits must be an int")
        self.radix = radix
        self.scaled = scaled
        self.frac_digits = frac_digits

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_decimal_string(
        cls, text: str, radix: int, frac_digits: int = DEFAULT_FRAC_DIGITS
    ) -> "RadixFixed":
        """Parse nonnegative decimal text and truncate to `frac_digits`
        fractional radix digits (floor semantics, never rounding)."""
        if not isinstance(text, str):
            raise TypeError("expected decimal text")
        stripped = text.strip()
        if stripped.startswith("-"):
            raise ValueError(f"negative input not supported: {text!r}")
        try:
            value = Fraction(stripped)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed decimal text: {text!r}") from exc
        return cls.from_rational(value, radix, frac_digits)

    @classmethod
    def from_rational(
        cls, value: Rational, radix: int, frac_digits: int = DEFAULT_FRAC_DIGITS
    ) -> "RadixFixed":
        """Truncate an exact rational to `frac_digits` fractional digits."""
        value = _as_fraction(value)
        if value < 0:
            raise ValueError("negative values are not supported")
        if frac_digits < 0:
            raise ValueError("frac_digits must be >= 0 when converting")
        scaled = (value.numerator * radix**frac_digits) // value.denominator
        return cls(radix, scaled, frac_digits)

    @classmethod
    def from_int(cls, n: int, radix: int) -> "RadixFixed":
        if n < 0:
            raise ValueError("negative values are not supported")
        return cls(radix, n, 0)

    @classmethod
    def from_digits(cls, radix: int, digits: Mapping[int, int]) -> "RadixFixed":
        """Build from an index -> digit map (indices may be negative)."""
        if not digits:
            return cls(radix, 0, 0)
        k_lo = min(digits)
        scaled = 0
        for k, d in digits.items():
            if not 0 <= d <= radix - 1:
                raise ValueError(f"digit {d} at index {k} out of [0, {radix - 1}]")
            scaled += d * radix ** (k - k_lo)
        return cls(radix, scaled, -k_lo)

    # -- digit window ------------------------------------------------------

    def digit_at(self, k: int) -> int:
        """The base-p digit at index k (zero outside the stored window)."""
        t = k + self.frac_digits
        if t < 0:
            return 0
        return (self.scaled // self.radix**t) % self.radix

    def digits(self) -> dict[int, int]:
        """Nonzero digits as an index -> digit map."""
        out = {}
        m, t = self.scaled, -self.frac_digits
        while m:
            m, d = divmod(m, self.radix)
            if d:
                out[t] = d
            t += 1
        return out

    def top_index(self) -> int | None:
        """Index of the most significant digit; None for zero.

        Equals floor(log_p(value)) for nonzero values.
        """
        if self.scaled == 0:
            return None
        n, m = 0, self.scaled
        while m:
            m //= self.radix
            n += 1
        return n - 1 - self.frac_digits

    def is_zero(self) -> bool:
        return self.scaled == 0

    # -- arithmetic --------------------------------------------------------

    def value(self) -> Fraction:
        """Exact rational value, sum of digit * p**k over the window."""
        if self.frac_digits >= 0:
            return Fraction(self.scaled, self.radix**self.frac_digits)
        return Fraction(self.scaled * self.radix**-self.frac_digits)

    def coarse_grain(self, depth: int) -> "RadixFixed":
        """Zero every digit below index -depth: p**-D * floor(p**D * x).

        The result never exceeds x and differs from it by less than p**-D.
        depth may be negative, which truncates above the radix point.
        """
        drop = self.frac_digits - depth
        if drop <= 0:
            return self
        unit = self.radix**drop
        return RadixFixed(self.radix, (self.scaled // unit) * unit, self.frac_digits)

    def scale_by_radix_power(self, m: int) -> "RadixFixed":
        """Multiply by p**m as a pure digit shift: digit k of the result is
        digit k - m of the input, with no arithmetic on the digits."""
        return RadixFixed(self.radix, self.scaled, self.frac_digits - m)

    # -- rendering ---------------------------------------------------------

    def digit_string(self) -> str:
        """Digits from the most significant index down to the window floor,
        e.g. '3.1415 (base 10)'. Bases above 10 separate digits with commas."""
        k_hi = self.top_index()
        k_hi = 0 if k_hi is None else max(k_hi, 0)
        k_lo = min(0, -self.frac_digits)
        int_part = [self.digit_at(k) for k in range(k_hi, -1, -1)]
        frac_part = [self.digit_at(k) for k in range(-1, k_lo - 1, -1)]
        if self.radix <= 10:
            joined = "".join(str(d) for d in int_part)
            if frac_part:
                joined += "." + "".join(str(d) for d in frac_part)
        else:
            joined = ",".join(str(d) for d in int_part)
            if frac_part:
                joined += "." + ",".join(str(d) for d in frac_part)
        return f"{joined} (base {self.radix})"

    def decimal_string(self, digits: int = DEFAULT_FRAC_DIGITS) -> str:
        """Decimal rendering truncated to `digits` fractional places."""
        return render_decimal(self.value(), digits)

    def __repr__(self) -> str:
        return (
            f"RadixFixed(radix={self.radix}, scaled={self.scaled}, "
            f"frac_digits={self.frac_digits})"
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, RadixFixed):
            return self.radix == other.radix and self.value() == other.value()
        if isinstance(other, (int, Fraction)):
            return self.value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.radix, self.value()))


def render_decimal(value: Fraction, digits: int = DEFAULT_FRAC_DIGITS) -> str:
    """Truncated fixed-point decimal rendering of an exact rational."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    num, den = value.numerator, value.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    whole, rem = divmod(num, den)
    if digits == 0:
        return f"{sign}{whole}"
    frac = (rem * 10**digits) // den
    return f"{sign}{whole}.{frac:0{digits}d}"


def digit(p: int, k: int, x) -> int:
    """The k-th digit of nonnegative x in radix p:
    floor(x / p**k) - p * floor(x / p**(k+1)).

    x may be an int, a Fraction, or a RadixFixed (matching radix takes the
    fast path; any other radix is evaluated on the exact value). p = 1 is
    degenerate: every digit is 0.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"radix must be an integer >= 1, got {p!r}")
    if isinstance(x, RadixFixed):
        if p == 1:
            return 0
        if x.radix == p:
            return x.digit_at(k)
        value = x.value()
    else:
        value = _as_fraction(x)
        if value < 0:
            raise ValueError("negative values are not supported")
        if p == 1:
            return 0
    return _floor_div_power(value, p, k) - p * _floor_div_power(value, p, k + 1)


def from_decimal_string(
    text: str, p: int, frac_digits: int = DEFAULT_FRAC_DIGITS
) -> RadixFixed:
    return RadixFixed.from_decimal_string(text, p, frac_digits)


def reconstruct(x: RadixFixed) -> Fraction:
    """Exact rational value of a RadixFixed (sum of digit * p**k)."""
    return x.value()


def coarse_grain(x: RadixFixed, depth: int) -> RadixFixed:
    return x.coarse_grain(depth)


def scale_by_radix_power(x: RadixFixed, m: int) -> RadixFixed:
    return x.scale_by_radix_power(m)


def mixed_radix_identity_check(n: int, p: int, k: int, x) -> bool:
    """Check the two mixed-radix digit decompositions of d_{np}(k, x):

        d_np(k, x) == d_p(k, x/n**k) + p * d_n(k, x/p**(k+1))
                   == d_n(k, x/p**k) + n * d_p(k, x/n**(k+1))

    evaluated in exact rational arithmetic. A False return is a library bug.
    """
    if n < 1 or p < 2:
        raise ValueError("requires n >= 1 and p >= 2")
    value = x.value() if isinstance(x, RadixFixed) else _as_fraction(x)
    if value < 0:
        raise ValueError("negative values are not supported")
    lhs = digit(n * p, k, value)
    first = digit(p, k, value / Fraction(n) ** k) + p * digit(
        n, k, value / Fraction(p) ** (k + 1)
    )
    second = digit(n, k, value / Fraction(p) ** k) + n * digit(
        p, k, value / Fraction(n) ** (k + 1)
    )
    return lhs == first == second
