"""Deterministic file export: ASCII PGM heightmaps and CSV tables.

Output is byte-stable for a given grid: plain ASCII, fixed layout, written
to a temp file in the target directory and renamed into place.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction

import numpy as np

from .radix import render_decimal
from .surface import SurfaceGrid, axis_rationals

__all__ = ["write_pgm", "write_csv", "write_raw_rational", "atomic_write_text"]

PGM_MAXVAL = 65535


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a same-directory temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def normalize_to_pixels(values: np.ndarray, maxval: int = PGM_MAXVAL) -> np.ndarray:
    """Affine map of [min, max] onto [0, maxval]; constant grids map to 0."""
    vmin = float(values.min())
    vmax = float(values.max())
    if vmax == vmin:
        return np.zeros(values.shape, dtype=np.uint32)
    scale = float(maxval) / (vmax - vmin)
    pixels = np.floor((values - vmin) * scale + 0.5)
    return np.clip(pixels, 0, maxval).astype(np.uint32)


def render_pgm(grid: SurfaceGrid) -> str:
    """ASCII P2 rendering: columns sweep u, rows sweep v (top row v_min)."""
    pixels = normalize_to_pixels(grid.values)
    lines = [f"P2\n{grid.nu} {grid.nv}\n{PGM_MAXVAL}"]
    for j in range(grid.nv):
        lines.append(" ".join(str(pixels[i, j]) for i in range(grid.nu)))
    return "\n".join(lines) + "\n"


def write_pgm(grid: SurfaceGrid, path: str) -> None:
    atomic_write_text(path, render_pgm(grid))


def _axis_fractions(grid: SurfaceGrid) -> tuple[list[Fraction], list[Fraction]]:
    u_min, u_max, v_min, v_max = grid.domain
    return (
        axis_rationals(u_min, u_max, grid.nu),
        axis_rationals(v_min, v_max, grid.nv),
    )


def render_csv(grid: SurfaceGrid, out_digits: int = 12) -> str:
    """'u,v,value' rows; every field is an exact rational truncated to
    out_digits decimal places. Requires a grid with exact heights."""
    if grid.exact_num is None or grid.exact_den is None:
        raise ValueError("CSV export needs a grid sampled with exact heights")
    us, vs = _axis_fractions(grid)
    den = grid.exact_den
    lines = ["u,v,value"]
    for i in range(grid.nu):
        u_text = render_decimal(us[i], out_digits)
        for j in range(grid.nv):
            lines.append(
                f"{u_text},{render_decimal(vs[j], out_digits)},"
                f"{render_decimal(Fraction(grid.exact_num[i][j], den), out_digits)}"
            )
    return "\n".join(lines) + "\n"


def write_csv(grid: SurfaceGrid, path: str, out_digits: int = 12) -> None:
    atomic_write_text(path, render_csv(grid, out_digits))


def render_raw_rational(grid: SurfaceGrid) -> str:
    """'u,v,value' rows with every field an exact num/den fraction."""
    if grid.exact_num is None or grid.exact_den is None:
        raise ValueError("raw-rational export needs a grid sampled with exact heights")
    us, vs = _axis_fractions(grid)
    den = grid.exact_den
    lines = ["u,v,value"]
    for i in range(grid.nu):
        u = us[i]
        for j in range(grid.nv):
            v = vs[j]
            value = Fraction(grid.exact_num[i][j], den)
            lines.append(
                f"{u.numerator}/{u.denominator},"
                f"{v.numerator}/{v.denominator},"
                f"{value.numerator}/{value.denominator}"
            )
    return "\n".join(lines) + "\n"


def write_raw_rational(grid: SurfaceGrid, path: str) -> None:
    atomic_write_text(path, render_raw_rational(grid))
