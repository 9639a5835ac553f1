"""Command-line interface.

Subcommands: eval (single point), surface (one grid), sweep (grids over a
range of q), check (verifier suites), reproduce (canned figure recipes).

Option precedence is flags > config file > built-in defaults. The config
file is flat ``key=value`` text where keys are long flag names without the
leading dashes. Every error message names the offending flag.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import checks
from .bitwise import bitwise_eval, carry_sum, mod_p_add
from .magma import MagmaOp, carry_code, mod_add_code, parse_op_literal
from .radix import DEFAULT_FRAC_DIGITS, RadixFixed, render_decimal
from .surface import (
    pointwise_identity_field,
    q_sweep,
    sample_surface,
    sample_surface_exact,
)
from .formats import write_csv, write_pgm, write_raw_rational

__all__ = ["main"]

FORMATS = ("pgm", "csv", "raw-rational")
BUILTINS = ("modadd", "carry")


class CliError(Exception):
    """A user-input problem attributable to one flag."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _load_config(path: str) -> dict[str, str]:
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise CliError("--config", f"cannot read {path!r}: {exc.strerror}")
    config = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError("--config", f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        config[key.strip()] = value.strip()
    return config


class Options:
    """Merged view of command-line flags and config-file entries."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, flag: str, default: str | None = None, required: bool = False) -> str | None:
        key = flag.lstrip("-")
        value = getattr(self.args, key.replace("-", "_"), None)
        if value is None:
            value = self.config.get(key)
        if value is None:
            if required:
                raise CliError(flag, "is required")
            return default
        return value


def _parse_int(text: str, flag: str, minimum: int | None = None) -> int:
    try:
        value = int(text)
    except ValueError:
        raise CliError(flag, f"expected an integer, got {text!r}")
    if minimum is not None and value < minimum:
        raise CliError(flag, f"must be >= {minimum}, got {value}")
    return value


def _parse_resolution(text: str, flag: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    if len(parts) != 2:
        raise CliError(flag, f"expected N or NUxNV, got {text!r}")
    nu = _parse_int(parts[0], flag, minimum=2)
    nv = _parse_int(parts[1], flag, minimum=2)
    return nu, nv


def _parse_domain(text: str, flag: str) -> tuple[str, str, str, str]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 4:
        raise CliError(flag, f"expected u_min,u_max,v_min,v_max, got {text!r}")
    for part in parts:
        try:
            if Fraction(part) < 0:
                raise ValueError
        except ValueError:
            raise CliError(flag, f"bad bound {part!r}: expected a nonnegative decimal")
    return tuple(parts)


def _resolve_op(opts: Options) -> MagmaOp:
    literal = opts.get("--op")
    builtin = opts.get("--builtin")
    if literal and builtin:
        raise CliError("--op", "give either --op or --builtin, not both")
    if builtin:
        if builtin not in BUILTINS:
            raise CliError("--builtin", f"unknown builtin {builtin!r}, expected one of {BUILTINS}")
        p = _parse_int(opts.get("--p", required=True), "--p", minimum=2)
        return mod_add_code(p) if builtin == "modadd" else carry_code(p)
    if literal is None:
        raise CliError("--op", "an operator is required (--op N:R:p or --builtin NAME --p P)")
    try:
        return parse_op_literal(literal)
    except ValueError as exc:
        raise CliError("--op", str(exc))


def _resolve_out_radix(opts: Options, op: MagmaOp) -> int:
    builtin = opts.get("--builtin")
    text = opts.get("--q")
    if text is None:
        if builtin:
            return op.radix
        raise CliError("--q", "is required")
    q = _parse_int(text, "--q", minimum=2)
    if builtin and q != op.radix:
        raise CliError("--q", f"builtin operators evaluate at q = p = {op.radix}")
    return q


def _parse_operands(opts: Options, op: MagmaOp, frac: int) -> list[RadixFixed]:
    text = opts.get("--args", required=True)
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != op.arity:
        raise CliError("--args", f"operator has arity {op.arity}, got {len(parts)} operands")
    operands = []
    for part in parts:
        try:
            operands.append(RadixFixed.from_decimal_string(part, op.radix, frac))
        except ValueError as exc:
            raise CliError("--args", f"bad operand {part!r}: {exc}")
    return operands


def _rational_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _decimal_text(value: Fraction, digits: int = 12) -> str:
    text = render_decimal(value, digits)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def _print_eval(value, coeff_text: str, k_max, exponent: float) -> None:
    print(f"value = {_rational_text(value)}")
    print(f"decimal = {_decimal_text(value)}")
    print(f"coeffs = {coeff_text}")
    print(f"k_max = {'none' if k_max is None else k_max}")
    print(f"H = {exponent:.6f}")


def cmd_eval(args: argparse.Namespace) -> int:
    opts = Options(args)
    op = _resolve_op(opts)
    q = _resolve_out_radix(opts, op)
    frac = _parse_int(opts.get("--frac", str(DEFAULT_FRAC_DIGITS)), "--frac", minimum=0)
    operands = _parse_operands(opts, op, frac)
    builtin = opts.get("--builtin")
    if builtin:
        a, b = operands
        result = mod_p_add(a, b) if builtin == "modadd" else carry_sum(a, b)
        _print_eval(result.value(), result.digit_string(), result.top_index(), 1.0)
    else:
        result = bitwise_eval(op, operands, q)
        _print_eval(
            result.value(), result.coeff_string(), result.k_max, result.roughness_exponent()
        )
    return 0


def _grid_summary(grid) -> str:
    return (
        f"min = {grid.min_value:.12g} max = {grid.max_value:.12g} "
        f"H = {grid.roughness_exponent:.6f}"
    )


def _write_grid(grid, path: str, fmt: str) -> None:
    if fmt == "pgm":
        write_pgm(grid, path)
    elif fmt == "csv":
        write_csv(grid, path)
    else:
        write_raw_rational(grid, path)


def _surface_params(opts: Options):
    domain = _parse_domain(opts.get("--domain", "0,1,0,1"), "--domain")
    resolution = _parse_resolution(opts.get("--res", "256"), "--res")
    frac = _parse_int(opts.get("--frac", str(DEFAULT_FRAC_DIGITS)), "--frac", minimum=0)
    depth_text = opts.get("--D")
    depth = None if depth_text is None else _parse_int(depth_text, "--D")
    threads_text = opts.get("--threads")
    threads = None if threads_text is None else _parse_int(threads_text, "--threads", minimum=1)
    return domain, resolution, frac, depth, threads


def cmd_surface(args: argparse.Namespace) -> int:
    opts = Options(args)
    op = _resolve_op(opts)
    q = _resolve_out_radix(opts, op)
    domain, resolution, frac, depth, threads = _surface_params(opts)
    fmt = opts.get("--format", "pgm")
    if fmt not in FORMATS:
        raise CliError("--format", f"unknown format {fmt!r}, expected one of {FORMATS}")
    out = opts.get("--out", required=True)
    try:
        if fmt == "pgm":
            grid = sample_surface(op, q, domain, resolution, frac_digits=frac,
                                  depth=depth, workers=threads)
        else:
            grid = sample_surface_exact(op, q, domain, resolution, frac_digits=frac,
                                        depth=depth)
    except ValueError as exc:
        raise CliError("--domain", str(exc))
    _write_grid(grid, out, fmt)
    print(f"wrote {out}")
    print(_grid_summary(grid))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    opts = Options(args)
    op = _resolve_op(opts)
    q_lo = _parse_int(opts.get("--qmin", "3"), "--qmin", minimum=2)
    q_hi = _parse_int(opts.get("--qmax", "11"), "--qmax", minimum=2)
    if q_hi < q_lo:
        raise CliError("--qmax", f"must be >= --qmin ({q_lo}), got {q_hi}")
    domain, resolution, frac, depth, threads = _surface_params(opts)
    fmt = opts.get("--format", "pgm")
    if fmt not in FORMATS:
        raise CliError("--format", f"unknown format {fmt!r}, expected one of {FORMATS}")
    out_dir = opts.get("--out-dir", required=True)
    os.makedirs(out_dir, exist_ok=True)
    q_values = list(range(q_lo, q_hi + 1))
    extension = "pgm" if fmt == "pgm" else ("csv" if fmt == "csv" else "txt")
    try:
        if fmt == "pgm":
            grids = q_sweep(op, domain, resolution, frac, q_values,
                            depth=depth, workers=threads)
        else:
            grids = [
                sample_surface_exact(op, q, domain, resolution, frac_digits=frac,
                                     depth=depth)
                for q in q_values
            ]
    except ValueError as exc:
        raise CliError("--domain", str(exc))
    for grid in grids:
        path = os.path.join(out_dir, f"sweep_q{grid.out_radix:02d}.{extension}")
        _write_grid(grid, path, fmt)
        print(f"wrote {path}")
        print(f"q = {grid.out_radix} {_grid_summary(grid)}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    opts = Options(args)
    suite = args.suite
    seed = _parse_int(opts.get("--seed", "0"), "--seed")
    if suite == "decomposition":
        p = _parse_int(opts.get("--p", "10"), "--p", minimum=2)
        trials = _parse_int(opts.get("--trials", "1000"), "--trials", minimum=0)
        frac = _parse_int(opts.get("--frac", str(DEFAULT_FRAC_DIGITS)), "--frac", minimum=0)
        report = checks.run_decomposition(p, trials, frac, seed)
    elif suite == "self-affinity":
        trials = _parse_int(opts.get("--trials", "200"), "--trials", minimum=0)
        report = checks.run_self_affinity(trials, seed)
    elif suite == "coarse-limit":
        op = _resolve_op(opts)
        q_max = _parse_int(opts.get("--qmax", "301"), "--qmax", minimum=op.radix)
        pairs = _parse_int(opts.get("--pairs", "20"), "--pairs", minimum=1)
        frac = _parse_int(opts.get("--frac", "6"), "--frac", minimum=0)
        report = checks.run_coarse_limit(op, q_max, pairs, frac, seed)
    elif suite == "mixed-radix":
        trials = _parse_int(opts.get("--trials", "1000"), "--trials", minimum=0)
        report = checks.run_mixed_radix(trials, seed)
    else:
        trials = _parse_int(opts.get("--trials", "500"), "--trials", minimum=0)
        report = checks.run_roundtrip(trials, seed)
    print(report.summary())
    for line in report.lines:
        print(line)
    return 0 if report.passed else 1


def _reproduce_surface(op_literal: str, q: int, domain, resolution, out_dir: str,
                       name: str, threads, depth: int | None = None) -> None:
    op = parse_op_literal(op_literal)
    grid = sample_surface(op, q, domain, resolution, depth=depth, workers=threads)
    path = os.path.join(out_dir, name)
    write_pgm(grid, path)
    print(f"wrote {path}")
    print(f"op = {op_literal} q = {q} {_grid_summary(grid)}")


def cmd_reproduce(args: argparse.Namespace) -> int:
    opts = Options(args)
    recipe = args.recipe
    out_dir = opts.get("--out-dir", "patchquilt-figs")
    threads_text = opts.get("--threads")
    threads = None if threads_text is None else _parse_int(threads_text, "--threads", minimum=1)
    res_text = opts.get("--res")
    os.makedirs(out_dir, exist_ok=True)

    if recipe == "sum-split":
        resolution = _parse_resolution(res_text or "256", "--res")
        total, carry_free, carry = pointwise_identity_field(
            ("0", "1", "0", "1"), resolution, 2, DEFAULT_FRAC_DIGITS
        )
        for grid, name in ((total, "plain-sum.pgm"), (carry_free, "digitwise-sum.pgm"),
                           (carry, "carry-sum.pgm")):
            path = os.path.join(out_dir, name)
            write_pgm(grid, path)
            print(f"wrote {path}")
        print(f"identity sum = digitwise + carry verified at {total.nu * total.nv} samples")
    elif recipe == "quilt":
        resolution = _parse_resolution(res_text or "512", "--res")
        _reproduce_surface("2:13903:3", 3, ("0", "200", "0", "200"), resolution,
                           out_dir, "quilt_2-13903-3_q3.pgm", threads)
    elif recipe == "gallery":
        resolution = _parse_resolution(res_text or "256", "--res")
        domain = ("0", "100", "0", "100")
        for literal, q in (("2:6:2", 2), ("2:7417:3", 3), ("2:9407:3", 3),
                           ("2:13427417:5", 5)):
            name = f"gallery_{literal.replace(':', '-')}_q{q}.pgm"
            _reproduce_surface(literal, q, domain, resolution, out_dir, name, threads)
    elif recipe == "q-sweep":
        resolution = _parse_resolution(res_text or "256", "--res")
        op = parse_op_literal("2:13903:3")
        grids = q_sweep(op, ("0", "100", "0", "100"), resolution,
                        DEFAULT_FRAC_DIGITS, list(range(3, 12)), workers=threads)
        for grid in grids:
            path = os.path.join(out_dir, f"sweep_q{grid.out_radix:02d}.pgm")
            write_pgm(grid, path)
            print(f"wrote {path}")
            print(f"q = {grid.out_radix} {_grid_summary(grid)}")
    else:
        resolution = _parse_resolution(res_text or "256", "--res")
        for depth in (0, -1, -2):
            _reproduce_surface("2:9815:3", 3, ("0", "100", "0", "100"), resolution,
                               out_dir, f"coarse_D{depth}.pgm", threads, depth=depth)
    return 0


def _add_op_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--op", help="operator literal N:R:p (or N:d0,d1,...:p)")
    sub.add_argument("--builtin", help="builtin operator: modadd or carry (needs --p)")
    sub.add_argument("--p", help="radix for --builtin")
    sub.add_argument("--q", help="output radix")


def _add_grid_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--domain", help="u_min,u_max,v_min,v_max (default 0,1,0,1)")
    sub.add_argument("--res", help="grid resolution N or NUxNV (default 256)")
    sub.add_argument("--frac", help="fractional digits F (default 12)")
    sub.add_argument("--D", help="coarse-graining truncation depth, may be negative")
    sub.add_argument("--threads", help="worker thread count")
    sub.add_argument("--format", help="output format: pgm, csv, raw-rational (default pgm)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patchquilt",
        description="Exact digitwise operators and self-affine patchwork quilt surfaces.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("eval", help="evaluate b_q at one point")
    _add_op_flags(sub)
    sub.add_argument("--args", help="comma-separated nonnegative decimal operands")
    sub.add_argument("--frac", help="fractional digits F (default 12)")
    sub.add_argument("--config", help="flat key=value config file")
    sub.set_defaults(func=cmd_eval)

    sub = subparsers.add_parser("surface", help="render one surface grid")
    _add_op_flags(sub)
    _add_grid_flags(sub)
    sub.add_argument("--out", help="output file path")
    sub.add_argument("--config", help="flat key=value config file")
    sub.set_defaults(func=cmd_surface)

    sub = subparsers.add_parser("sweep", help="render surfaces for a range of q")
    _add_op_flags(sub)
    _add_grid_flags(sub)
    sub.add_argument("--qmin", help="first output radix (default 3)")
    sub.add_argument("--qmax", help="last output radix (default 11)")
    sub.add_argument("--out-dir", help="output directory")
    sub.add_argument("--config", help="flat key=value config file")
    sub.set_defaults(func=cmd_sweep)

    sub = subparsers.add_parser("check", help="run a verifier suite")
    sub.add_argument("suite", choices=checks.SUITES)
    sub.add_argument("--op", help="operator literal (coarse-limit suite)")
    sub.add_argument("--builtin", help="builtin operator: modadd or carry (needs --p)")
    sub.add_argument("--p", help="radix (decomposition suite)")
    sub.add_argument("--trials", help="number of random trials")
    sub.add_argument("--pairs", help="operand pairs (coarse-limit suite)")
    sub.add_argument("--qmax", help="largest output radix (coarse-limit suite)")
    sub.add_argument("--frac", help="fractional digits F")
    sub.add_argument("--seed", help="RNG seed (default 0)")
    sub.add_argument("--config", help="flat key=value config file")
    sub.set_defaults(func=cmd_check)

    sub = subparsers.add_parser("reproduce", help="run a canned figure recipe")
    sub.add_argument(
        "recipe", choices=("sum-split", "quilt", "gallery", "q-sweep", "coarse-grain")
    )
    sub.add_argument("--out-dir", help="output directory (default patchquilt-figs)")
    sub.add_argument("--res", help="override grid resolution")
    sub.add_argument("--threads", help="worker thread count")
    sub.add_argument("--config", help="flat key=value config file")
    sub.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: --out: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
