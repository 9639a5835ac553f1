"""Pure-Python grid fill, the fallback for the compiled kernel.

Same contract as _gridcore.fill_rows, and deliberately the same float
operations in the same order, so results are bit-identical to the
compiled backend.
"""

from __future__ import annotations


def fill_rows(out, digits_u, tops_u, digits_v, tops_v, table, p, q, scale, t_cut):
    du = [row.tolist() for row in digits_u]
    dv = [row.tolist() for row in digits_v]
    tu = tops_u.tolist()
    tv = tops_v.tolist()
    tbl = table.tolist()
    q = float(q)
    scale = float(scale)
    nv = len(dv)
    for i in range(len(du)):
        row_u = du[i]
        ti = tu[i]
        row_out = [0.0] * nv
        for j in range(nv):
            t0 = ti if ti > tv[j] else tv[j]
            if t0 < t_cut:
                continue
            row_v = dv[j]
            acc = 0.0
            for t in range(t0, t_cut - 1, -1):
                acc = acc * q + tbl[row_u[t] + p * row_v[t]]
            for _ in range(t_cut):
                acc = acc * q
            row_out[j] = acc / scale
        out[i] = row_out
