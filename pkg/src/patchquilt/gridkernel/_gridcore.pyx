# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled grid fill.

Horner evaluation of a digitwise operator table over precomputed per-axis
digit matrices. Must stay operation-for-operation identical to the pure
fallback in _pyfill.py: every float step below (multiply, add, divide, in
this order) is mirrored there, and the build disables FMA contraction, so
the two backends produce bit-identical doubles.
"""


def fill_rows(double[:, ::1] out,
              int[:, ::1] digits_u, int[::1] tops_u,
              int[:, ::1] digits_v, int[::1] tops_v,
              int[::1] table, int p, double q, double scale, int t_cut):
    """Fill out[i, j] with the grid values for all rows of the shard.

    digits_u/digits_v: little-endian digit matrices of the axis coordinates.
    tops_u/tops_v: index of each coordinate's top nonzero digit (-1 if zero).
    t_cut: lowest digit position kept (0 for no truncation).
    scale: q**frac_digits as a double; the final division by it is the only
    step after the integer-valued Horner accumulation.
    """
    cdef Py_ssize_t nu = digits_u.shape[0]
    cdef Py_ssize_t nv = digits_v.shape[0]
    cdef Py_ssize_t i, j
    cdef int t, t0, ti
    cdef double acc
    with nogil:
        for i in range(nu):
            ti = tops_u[i]
            for j in range(nv):
                t0 = ti if ti > tops_v[j] else tops_v[j]
                if t0 < t_cut:
                    out[i, j] = 0.0
                    continue
                acc = 0.0
                for t in range(t0, t_cut - 1, -1):
                    acc = acc * q + table[digits_u[i, t] + p * digits_v[j, t]]
                for t in range(t_cut):
                    acc = acc * q
                out[i, j] = acc / scale
