"""Sampling digitwise operators over rectangular (u, v) domains.

Grid coordinates are generated as exact rationals (decimal endpoints,
rational interpolation) and truncated to the working radix, so sample
positions are reproducible across runs and platforms. Double-precision
heights come from the grid kernel (compiled or pure Python, bit-identical
either way); identity and ordering checks run on exact integers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import gridkernel
from .magma import MagmaOp, carry_code, mod_add_code
from .radix import DEFAULT_FRAC_DIGITS

__all__ = [
    "SurfaceGrid",
    "sample_surface",
    "sample_surface_exact",
    "pointwise_identity_field",
    "symmetry_probe",
    "q_sweep",
    "sweep_exact_numerators",
    "axis_rationals",
    "resolve_workers",
]

Domain = tuple[str, str, str, str]

_KERNEL_RADIX_LIMIT = 32768  # table index must stay within a C int


@dataclass
class SurfaceGrid:
    """A sampled field of operator values over a rectangular (u, v) domain.

    values[i][j] is the height at (u_i, v_j) with
    u_i = u_min + i * (u_max - u_min) / (nu - 1), coordinates converted
    exactly and truncated to frac_digits radix digits. exact_num/exact_den,
    when present, hold the same heights as exact integers over a common
    denominator.
    """

    op: MagmaOp
    out_radix: int
    domain: Domain
    nu: int
    nv: int
    frac_digits: int
    values: np.ndarray = field(repr=False)
    depth: int | None = None
    exact_num: list[list[int]] | None = field(default=None, repr=False)
    exact_den: int | None = None

    @property
    def roughness_exponent(self) -> float:
        if self.out_radix == self.op.radix:
            return 1.0
        return math.log(self.out_radix) / math.log(self.op.radix)

    @property
    def min_value(self) -> float:
        return float(self.values.min())

    @property
    def max_value(self) -> float:
        return float(self.values.max())


def _parse_bound(text: str, name: str) -> Fraction:
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{name}: malformed decimal {text!r}") from exc
    if value < 0:
        raise ValueError(f"{name}: negative bound {text!r} not supported")
    return value


def axis_rationals(lo: str, hi: str, n: int) -> list[Fraction]:
    """n exact sample positions from lo to hi inclusive."""
    if n < 2:
        raise ValueError(f"resolution must be >= 2, got {n}")
    f_lo = _parse_bound(lo, "domain min")
    f_hi = _parse_bound(hi, "domain max")
    if f_lo >= f_hi:
        raise ValueError(f"domain min {lo!r} must be < max {hi!r}")
    step = (f_hi - f_lo) / (n - 1)
    return [f_lo + i * step for i in range(n)]


def _scaled_coords(coords: list[Fraction], p: int, frac_digits: int) -> list[int]:
    unit = p**frac_digits
    return [(c.numerator * unit) // c.denominator for c in coords]


def _digit_matrix(scaled: list[int], p: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    """Little-endian digit matrix and top-digit index (-1 for zero) per coord."""
    n = len(scaled)
    digits = np.zeros((n, width), dtype=np.intc)
    tops = np.full(n, -1, dtype=np.intc)
    for i, m in enumerate(scaled):
        t = 0
        while m:
            m, d = divmod(m, p)
            digits[i, t] = d
            t += 1
        tops[i] = t - 1
    return digits, tops


def _digit_width(scaled_u: list[int], scaled_v: list[int], p: int) -> int:
    m = max(max(scaled_u, default=0), max(scaled_v, default=0))
    width = 0
    while m:
        m //= p
        width += 1
    return width


def resolve_workers(requested: int | None, rows: int) -> int:
    """Worker count: requested (or cpu count), capped by PATCHWORK_THREADS."""
    if requested is None:
        requested = os.cpu_count() or 1
    if requested < 1:
        raise ValueError(f"worker count must be >= 1, got {requested}")
    cap = os.environ.get("PATCHWORK_THREADS")
    if cap:
        try:
            requested = min(requested, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"PATCHWORK_THREADS={cap!r} is not an integer")
    return max(1, min(requested, rows))


class _GridPlan:
    """Shared per-domain state: exact coordinates and their digit matrices."""

    def __init__(self, op: MagmaOp, domain: Domain, resolution, frac_digits: int):
        if op.arity != 2:
            raise ValueError("surface sampling needs a binary operator")
        if op.radix >= _KERNEL_RADIX_LIMIT:
            raise ValueError(f"radix {op.radix} too large for grid sampling")
        if frac_digits < 0:
            raise ValueError("frac_digits must be >= 0")
        if isinstance(resolution, int):
            resolution = (resolution, resolution)
        self.op = op
        self.domain = tuple(domain)
        self.nu, self.nv = resolution
        self.frac_digits = frac_digits
        u_min, u_max, v_min, v_max = domain
        p = op.radix
        self.scaled_u = _scaled_coords(axis_rationals(u_min, u_max, self.nu), p, frac_digits)
        self.scaled_v = _scaled_coords(axis_rationals(v_min, v_max, self.nv), p, frac_digits)
        width = _digit_width(self.scaled_u, self.scaled_v, p)
        self.du, self.tu = _digit_matrix(self.scaled_u, p, width)
        self.dv, self.tv = _digit_matrix(self.scaled_v, p, width)
        self.table = np.asarray(op.table, dtype=np.intc)

    def cut(self, depth: int | None) -> int:
        if depth is None:
            return 0
        return max(0, self.frac_digits - depth)

    def fill(self, q: int, depth: int | None, workers: int | None) -> np.ndarray:
        """Run the kernel over row shards; positional merge keeps the output
        identical for any worker count."""
        if q < 2:
            raise ValueError(f"output radix must be >= 2, got {q}")
        out = np.zeros((self.nu, self.nv), dtype=np.float64)
        scale = float(q**self.frac_digits)
        t_cut = self.cut(depth)
        p = self.op.radix
        n_workers = resolve_workers(workers, self.nu)
        if n_workers == 1:
            gridkernel.fill_rows(
                out, self.du, self.tu, self.dv, self.tv,
                self.table, p, float(q), scale, t_cut,
            )
            return out
        bounds = [(r * self.nu) // n_workers for r in range(n_workers + 1)]
        shards = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]

        def run(shard):
            lo, hi = shard
            gridkernel.fill_rows(
                out[lo:hi], self.du[lo:hi], self.tu[lo:hi], self.dv, self.tv,
                self.table, p, float(q), scale, t_cut,
            )

        with ThreadPoolExecutor(max_workers=len(shards)) as pool:
            list(pool.map(run, shards))
        return out

    def exact_numerators(self, q: int, depth: int | None) -> list[list[int]]:
        """Heights as exact integers over denominator q**frac_digits."""
        if q < 2:
            raise ValueError(f"output radix must be >= 2, got {q}")
        table = self.op.table
        p = self.op.radix
        t_cut = self.cut(depth)
        du_l = [row.tolist() for row in self.du]
        dv_l = [row.tolist() for row in self.dv]
        tu_l = self.tu.tolist()
        tv_l = self.tv.tolist()
        shift = q**t_cut
        rows = []
        for i, row_u in enumerate(du_l):
            ti = tu_l[i]
            row = []
            for j, row_v in enumerate(dv_l):
                t0 = ti if ti > tv_l[j] else tv_l[j]
                if t0 < t_cut:
                    row.append(0)
                    continue
                acc = 0
                for t in range(t0, t_cut - 1, -1):
                    acc = acc * q + table[row_u[t] + p * row_v[t]]
                row.append(acc * shift)
            rows.append(row)
        return rows

    def grid(self, q, depth, values, nums=None) -> SurfaceGrid:
        return SurfaceGrid(
            op=self.op, out_radix=q, domain=self.domain, nu=self.nu, nv=self.nv,
            frac_digits=self.frac_digits, values=values, depth=depth,
            exact_num=nums, exact_den=None if nums is None else q**self.frac_digits,
        )


def _floats_of(nums: list[list[int]], den: int) -> np.ndarray:
    return np.array(
        [[float(Fraction(n, den)) for n in row] for row in nums], dtype=np.float64
    )


def sample_surface(
    op: MagmaOp,
    q: int,
    domain: Domain,
    resolution,
    frac_digits: int = DEFAULT_FRAC_DIGITS,
    depth: int | None = None,
    workers: int | None = None,
) -> SurfaceGrid:
    """Sample the operator over the domain into a float64 height grid."""
    plan = _GridPlan(op, domain, resolution, frac_digits)
    return plan.grid(q, depth, plan.fill(q, depth, workers))


def sample_surface_exact(
    op: MagmaOp,
    q: int,
    domain: Domain,
    resolution,
    frac_digits: int = DEFAULT_FRAC_DIGITS,
    depth: int | None = None,
) -> SurfaceGrid:
    """Like sample_surface, but heights are exact integers over q**frac_digits.

    values holds the correctly rounded doubles of those exact heights.
    """
    plan = _GridPlan(op, domain, resolution, frac_digits)
    nums = plan.exact_numerators(q, depth)
    return plan.grid(q, depth, _floats_of(nums, q**frac_digits), nums)


def pointwise_identity_field(
    domain: Domain,
    resolution,
    p: int,
    frac_digits: int = DEFAULT_FRAC_DIGITS,
) -> tuple[SurfaceGrid, SurfaceGrid, SurfaceGrid]:
    """The plain sum u+v, its carry-free part, and its carry part, as grids.

    Verifies the exact decomposition sum == carry-free + carries at every
    sample before returning; a violation raises AssertionError.
    """
    plan_g = _GridPlan(mod_add_code(p), domain, resolution, frac_digits)
    plan_h = _GridPlan(carry_code(p), domain, resolution, frac_digits)
    den = p**frac_digits
    g_nums = plan_g.exact_numerators(p, None)
    # the carry string is read one position up: multiply its numerators by p
    h_nums = [[p * n for n in row] for row in plan_h.exact_numerators(p, None)]

    f_nums = []
    for i in range(plan_g.nu):
        row = []
        for j in range(plan_g.nv):
            total = plan_g.scaled_u[i] + plan_g.scaled_v[j]
            split = g_nums[i][j] + h_nums[i][j]
            if total != split:
                raise AssertionError(
                    f"sum decomposition failed at sample ({i}, {j}): "
                    f"{total} != {split} over denominator {den}"
                )
            row.append(total)
        f_nums.append(row)

    grid_f = plan_g.grid(p, None, _floats_of(f_nums, den), f_nums)
    grid_g = plan_g.grid(p, None, _floats_of(g_nums, den), g_nums)
    grid_h = plan_h.grid(p, None, _floats_of(h_nums, den), h_nums)
    return grid_f, grid_g, grid_h


def symmetry_probe(grid: SurfaceGrid) -> bool:
    """Whether the sampled field is symmetric under swapping u and v.

    Requires a square domain and resolution. True is expected exactly when
    the operator is commutative.
    """
    u_min, u_max, v_min, v_max = grid.domain
    if grid.nu != grid.nv:
        raise ValueError(f"grid is {grid.nu}x{grid.nv}, not square")
    if _parse_bound(u_min, "u min") != _parse_bound(v_min, "v min") or _parse_bound(
        u_max, "u max"
    ) != _parse_bound(v_max, "v max"):
        raise ValueError("domain is not square")
    if grid.exact_num is not None:
        n = grid.nu
        return all(
            grid.exact_num[i][j] == grid.exact_num[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )
    return bool(np.array_equal(grid.values, grid.values.T))


def q_sweep(
    op: MagmaOp,
    domain: Domain,
    resolution,
    frac_digits: int,
    q_list: list[int],
    depth: int | None = None,
    workers: int | None = None,
) -> list[SurfaceGrid]:
    """One grid per output radix q; the digit work is shared across the sweep.

    Raw per-point heights are nondecreasing in q because the coefficient
    string at each sample does not depend on q.
    """
    if not q_list:
        raise ValueError("q_list must be nonempty")
    plan = _GridPlan(op, domain, resolution, frac_digits)
    return [plan.grid(q, depth, plan.fill(q, depth, workers)) for q in q_list]


def sweep_exact_numerators(
    op: MagmaOp,
    domain: Domain,
    resolution,
    frac_digits: int,
    q_list: list[int],
) -> list[tuple[int, list[list[int]], int]]:
    """Exact (q, numerators, denominator) triples for ordering checks."""
    if not q_list:
        raise ValueError("q_list must be nonempty")
    plan = _GridPlan(op, domain, resolution, frac_digits)
    return [(q, plan.exact_numerators(q, None), q**frac_digits) for q in q_list]
