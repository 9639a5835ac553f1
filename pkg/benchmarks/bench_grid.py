"""Benchmark the compiled grid kernel against the pure Python fallback.

Both backends fill the same row-major grid with identical operation order,
so their outputs must match byte for byte; this script asserts that before
reporting timings. Run from the repo root:

    python3 benchmarks/bench_grid.py
    python3 benchmarks/bench_grid.py --res 512 --op 2:13903:3 --q 3
"""

import argparse
import time

import numpy as np

from patchquilt.magma import parse_op_literal
from patchquilt.surface import _GridPlan


def load_backends():
    from patchquilt.gridkernel import _pyfill

    backends = [("python", _pyfill.fill_rows)]
    try:
        from patchquilt.gridkernel import _gridcore
    except ImportError:
        print("compiled kernel not built; benchmarking pure Python only")
    else:
        backends.insert(0, ("cython", _gridcore.fill_rows))
    return backends


def run_once(fill, plan, q):
    out = np.zeros((plan.nu, plan.nv), dtype=np.float64)
    start = time.perf_counter()
    fill(out, plan.du, plan.tu, plan.dv, plan.tv,
         plan.table, plan.op.radix, float(q), float(q**plan.frac_digits), 0)
    return time.perf_counter() - start, out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--op", default="2:13903:3", help="operator literal N:R:p")
    ap.add_argument("--q", type=int, default=3, help="output radix")
    ap.add_argument("--res", type=int, default=256, help="grid is res x res")
    ap.add_argument("--domain", default="0,200,0,200", help="umin,umax,vmin,vmax")
    ap.add_argument("--frac", type=int, default=12, help="fractional digits")
    ap.add_argument("--repeats", type=int, default=3, help="best-of timing")
    args = ap.parse_args()

    op = parse_op_literal(args.op)
    domain = tuple(args.domain.split(","))
    plan = _GridPlan(op, domain, args.res, args.frac)
    samples = plan.nu * plan.nv
    print(f"op {args.op}  q={args.q}  {plan.nu}x{plan.nv} grid  F={args.frac}")

    times = {}
    outputs = {}
    for name, fill in load_backends():
        runs = [run_once(fill, plan, args.q) for _ in range(args.repeats)]
        times[name], outputs[name] = min(runs, key=lambda r: r[0])
        rate = samples / times[name] / 1e6
        print(f"  {name:>7}: {times[name] * 1e3:9.2f} ms   {rate:7.2f} Msamples/s")

    if len(outputs) == 2:
        if outputs["cython"].tobytes() != outputs["python"].tobytes():
            print("  MISMATCH: backends disagree")
            return 1
        print(f"  outputs byte-identical; speedup "
              f"{times['python'] / times['cython']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
