# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled construction kernels.

Every routine here has a numpy twin in :mod:`blockgate._fallback` with the
same signature and the same result; the twin is what runs when this
extension is not built.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "compiled"


def sandwich(const double complex[:, ::1] m, Py_ssize_t left, Py_ssize_t right):
    """Return ``I_left (x) m (x) I_right`` by writing the nonzeros directly."""
    cdef Py_ssize_t mr = m.shape[0], mc = m.shape[1]
    cdef Py_ssize_t x, r, c, y, base_r, base_c
    cdef double complex v
    out = np.zeros((left * mr * right, left * mc * right), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    for x in range(left):
        for r in range(mr):
            for c in range(mc):
                v = m[r, c]
                if v == 0:
                    continue
                base_r = (x * mr + r) * right
                base_c = (x * mc + c) * right
                for y in range(right):
                    o[base_r + y, base_c + y] = v
    return out


def grid_embed(const double complex[:, :, :, ::1] blocks, Py_ssize_t left,
               Py_ssize_t inner, Py_ssize_t right):
    """Return ``I_left (x) G (x) I_right`` where ``G`` is a block grid.

    ``blocks`` has shape ``(g, g, b, b)``; block ``(i, j)`` of ``G`` is
    ``I_inner (x) blocks[i, j]``.
    """
    cdef Py_ssize_t g = blocks.shape[0], b = blocks.shape[2]
    cdef Py_ssize_t tile = inner * b
    cdef Py_ssize_t width = g * tile
    cdef Py_ssize_t side = left * width * right
    cdef Py_ssize_t x, i, j, s, p, q, y, row, col
    cdef double complex v
    out = np.zeros((side, side), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    for i in range(g):
        for j in range(g):
            for p in range(b):
                for q in range(b):
                    v = blocks[i, j, p, q]
                    if v == 0:
                        continue
                    for x in range(left):
                        for s in range(inner):
                            row = (x * width + i * tile + s * b + p) * right
                            col = (x * width + j * tile + s * b + q) * right
                            for y in range(right):
                                o[row + y, col + y] = v
    return out


def matmul(const double complex[:, ::1] a, const double complex[:, ::1] b):
    """Row-by-row product that skips zero entries of both factors.

    Rows of ``b`` are compressed once; each nonzero ``a[i, k]`` then
    scatters over the nonzeros of row ``k``. Summation order is fixed, so
    results are bitwise reproducible.
    """
    cdef Py_ssize_t n = a.shape[0], inner = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, k, t, nnz = 0
    cdef double complex v
    cdef cnp.ndarray[cnp.intp_t, ndim=1] indptr = np.zeros(inner + 1, dtype=np.intp)
    for k in range(inner):
        for t in range(m):
            if b[k, t] != 0:
                nnz += 1
        indptr[k + 1] = nnz
    cdef cnp.ndarray[cnp.intp_t, ndim=1] cols = np.empty(nnz, dtype=np.intp)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vals = np.empty(nnz, dtype=np.complex128)
    nnz = 0
    for k in range(inner):
        for t in range(m):
            if b[k, t] != 0:
                cols[nnz] = t
                vals[nnz] = b[k, t]
                nnz += 1
    out = np.zeros((n, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    for i in range(n):
        for k in range(inner):
            v = a[i, k]
            if v == 0:
                continue
            for t in range(indptr[k], indptr[k + 1]):
                o[i, cols[t]] += v * vals[t]
    return out


def trace_product(const double complex[:, ::1] a, const double complex[:, ::1] b):
    """``Tr(a @ b)`` without forming the product."""
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1], i, j
    cdef double complex acc = 0
    for i in range(n):
        for j in range(m):
            if a[i, j] != 0:
                acc += a[i, j] * b[j, i]
    return complex(acc)
