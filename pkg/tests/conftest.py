"""Shared fixtures and independent oracle implementations.

The oracles reimplement the digit-level definitions directly on Fractions
and plain integer division, with no code shared with the package, so test
expectations are derived independently of the implementation under test.
"""

from __future__ import annotations

import math
import os
import subprocess
import sys
from fractions import Fraction

import pytest


def digit_oracle(p: int, k: int, x: Fraction) -> int:
    """k-th radix-p digit straight from the defining floor expression."""
    if p == 1:
        return 0
    scale = Fraction(p) ** k
    return math.floor(x / scale) - p * math.floor(x / (scale * p))


def int_digits(n: int, p: int) -> list[int]:
    """Little-endian base-p digits of a nonnegative integer (oracle:
    repeated integer division)."""
    if n == 0:
        return [0]
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def bitwise_value_oracle(
    table: tuple[int, ...], p: int, q: int, xs: list[Fraction], k_lo: int, k_hi: int
) -> Fraction:
    """Direct evaluation of the digitwise operator over an index window."""
    total = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        index = sum(digit_oracle(p, k, x) * p**i for i, x in enumerate(xs))
        total += Fraction(q) ** k * table[index]
    return total


@pytest.fixture
def run_cli():
    """Run the installed CLI in a subprocess; returns (exit, stdout, stderr)."""

    def invoke(*argv: str, env: dict[str, str] | None = None, cwd: str | None = None):
        full_env = dict(os.environ)
        if env:
            full_env.update(env)
        proc = subprocess.run(
            [sys.executable, "-m", "patchquilt", *argv],
            capture_output=True,
            text=True,
            env=full_env,
            cwd=cwd,
        )
        return proc.returncode, proc.stdout, proc.stderr

    return invoke
