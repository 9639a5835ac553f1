"""Randomized and exhaustive self-check suites.

Each suite exercises one of the library's exact laws on generated inputs
and reports the first counterexample if anything fails. The CLI `check`
command and the test suite both run these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bitwise import (
    check_coarse_limit,
    check_self_affinity,
    check_sum_decomposition,
    bitwise_eval,
)
from .magma import MagmaOp
from .radix import RadixFixed, mixed_radix_identity_check, reconstruct

__all__ = [
    "CheckReport",
    "run_decomposition",
    "run_self_affinity",
    "run_coarse_limit",
    "run_mixed_radix",
    "run_roundtrip",
    "SUITES",
]


@dataclass
class CheckReport:
    suite: str
    passed: bool
    trials: int
    detail: str = ""
    lines: list[str] = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.suite}: {self.trials} trials"
        if self.detail:
            text += f" ({self.detail})"
        return text


def random_operand(rng: random.Random, p: int, frac: int, int_digits: int = 3) -> RadixFixed:
    return RadixFixed(p, rng.randrange(p ** (frac + int_digits)), frac)


def random_magma(rng: random.Random, p: int, arity: int = 2) -> MagmaOp:
    return MagmaOp(p, arity, [rng.randrange(p) for _ in range(p**arity)])


def run_decomposition(
    p: int = 10, trials: int = 1000, frac: int = 12, seed: int = 0
) -> CheckReport:
    """a + b == carry-free sum + carry sum, exactly, on random pairs."""
    rng = random.Random(seed)
    for n in range(trials):
        a = random_operand(rng, p, frac)
        b = random_operand(rng, p, frac)
        if not check_sum_decomposition(a, b):
            return CheckReport(
                "decomposition",
                False,
                n + 1,
                f"counterexample: p={p} F={frac} "
                f"a={a.decimal_string(frac)} b={b.decimal_string(frac)}",
            )
    return CheckReport("decomposition", True, trials, f"p={p} F={frac}")


def run_self_affinity(
    trials: int = 200, seed: int = 0, radices: tuple[int, ...] = (2, 3, 5)
) -> CheckReport:
    """Digit shift and exact q-fold value scaling under operand scaling by p,
    across random operators, operand pairs, and output radices."""
    if trials == 0:
        return CheckReport(
            "self-affinity", True, 0, "warning: no trials requested, vacuous pass"
        )
    rng = random.Random(seed)
    for n in range(trials):
        p = rng.choice(radices)
        op = random_magma(rng, p)
        q = rng.randrange(2, 13)
        frac = rng.randrange(0, 9)
        operands = [random_operand(rng, p, frac) for _ in range(2)]
        if not check_self_affinity(op, operands, q):
            return CheckReport(
                "self-affinity",
                False,
                n + 1,
                f"counterexample: op={op.arity}:{op.code}:{op.radix} q={q} "
                f"u={operands[0].decimal_string(frac)} "
                f"v={operands[1].decimal_string(frac)}",
            )
    return CheckReport("self-affinity", True, trials, f"p in {radices}")


def run_coarse_limit(
    op: MagmaOp,
    q_max: int = 301,
    pairs: int = 20,
    frac: int = 6,
    seed: int = 0,
    digit_match_q_max: int = 12,
) -> CheckReport:
    """Large-q behavior: digit stability for q >= p and the certified
    deviation bound rel_deviation < p/(q-1) out to q_max.

    Operand pairs are drawn with a nonzero leading coefficient so the
    deviation is defined (a zero leading digit makes it meaningless).
    """
    p = op.radix
    rng = random.Random(seed)
    chosen = []
    guard = 0
    while len(chosen) < pairs:
        guard += 1
        if guard > pairs * 1000:
            return CheckReport(
                "coarse-limit", False, 0,
                "could not sample operands with nonzero leading coefficient",
            )
        operands = [random_operand(rng, p, frac) for _ in range(op.arity)]
        base = bitwise_eval(op, operands, p)
        if base.k_max is not None and base.coeff(base.k_max) > 0:
            chosen.append(operands)

    table_lines = []
    checked = 0
    for idx, operands in enumerate(chosen):
        for q in range(p, q_max + 1):
            digit_match, rel = check_coarse_limit(op, operands, q)
            checked += 1
            if q <= digit_match_q_max and not digit_match:
                return CheckReport(
                    "coarse-limit", False, checked,
                    f"digit mismatch at q={q} for pair {idx}",
                )
            if rel is None or rel < 0 or rel >= Fraction(p, q - 1):
                return CheckReport(
                    "coarse-limit", False, checked,
                    f"deviation bound violated at q={q} for pair {idx}: rel={rel}",
                )
            if idx == 0 and (q in (p, 2 * p, 10) or q % 50 == 0 or q == q_max):
                table_lines.append(
                    f"  q={q:4d}  rel_deviation={float(rel):.6f}  bound={p / (q - 1):.6f}"
                )
    report = CheckReport(
        "coarse-limit", True, checked, f"{pairs} pairs, q up to {q_max}"
    )
    report.lines = ["rel_deviation trace (first pair):"] + table_lines
    return report


def run_mixed_radix(trials: int = 1000, seed: int = 0) -> CheckReport:
    """Both mixed-radix digit decompositions on random exact rationals."""
    rng = random.Random(seed)
    for t in range(trials):
        n = rng.randrange(1, 7)
        p = rng.randrange(2, 8)
        k = rng.randrange(-4, 5)
        x = Fraction(rng.randrange(0, 10**6), rng.randrange(1, 10**4))
        if not mixed_radix_identity_check(n, p, k, x):
            return CheckReport(
                "mixed-radix", False, t + 1,
                f"counterexample: n={n} p={p} k={k} x={x}",
            )
    return CheckReport("mixed-radix", True, trials)


def run_roundtrip(trials: int = 500, seed: int = 0) -> CheckReport:
    """Operator code/table round trips and parse/reconstruct fidelity."""
    rng = random.Random(seed)
    for t in range(trials):
        p = rng.randrange(2, 6)
        arity = rng.randrange(1, 3)
        code = rng.randrange(p ** (p**arity))
        op = MagmaOp.from_code(code, p, arity)
        if op.code != code:
            return CheckReport(
                "roundtrip", False, t + 1,
                f"code round trip failed: p={p} N={arity} R={code} -> {op.code}",
            )
        if MagmaOp(p, arity, op.table).code != code:
            return CheckReport(
                "roundtrip", False, t + 1,
                f"table round trip failed: p={p} N={arity} R={code}",
            )
        frac = rng.randrange(0, 10)
        whole = rng.randrange(0, 10**6)
        cents = rng.randrange(0, 10**6)
        text = f"{whole}.{cents:06d}"
        x = RadixFixed.from_decimal_string(text, p, frac)
        true_value = Fraction(text)
        if not (0 <= true_value - reconstruct(x) < Fraction(1, p**frac)):
            return CheckReport(
                "roundtrip", False, t + 1,
                f"parse fidelity failed: {text} in p={p} F={frac}",
            )
    return CheckReport("roundtrip", True, trials)


SUITES = ("decomposition", "self-affinity", "coarse-limit", "mixed-radix", "roundtrip")
