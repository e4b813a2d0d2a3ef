# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled mod-p row reduction kernel.

Same contract as _modp_py: rows are 1-D uint64 arrays with entries in
[0, p), p a prime below 2^62.  Products go through 128-bit integers.
"""

import numpy as np

name = "cython"

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 mulmod(u64 a, u64 b, u64 p) nogil:
    return <u64> ((<u128> a * <u128> b) % <u128> p)


def prepare_row(values, p):
    arr = np.asarray(values)
    if arr.dtype == np.uint64:
        out = arr.copy()
    else:
        out = (np.asarray(arr, dtype=object) % int(p)).astype(np.uint64)
    return np.ascontiguousarray(out)


def reduce_row(list ech, list piv, u64[::1] row, p):
    cdef u64 pp = p
    cdef Py_ssize_t n = row.shape[0]
    cdef Py_ssize_t k, j, c
    cdef u64 coef, e, invc
    cdef u64[::1] er
    for k in range(len(ech)):
        c = piv[k]
        coef = row[c]
        if coef:
            er = ech[k]
            for j in range(c, n):
                e = er[j]
                if e:
                    row[j] = (row[j] + pp - mulmod(coef, e, pp)) % pp
    for j in range(n):
        if row[j]:
            invc = pow(int(row[j]), int(pp) - 2, int(pp))
            if invc != 1:
                for k in range(j, n):
                    if row[k]:
                        row[k] = mulmod(row[k], invc, pp)
            return j
    return -1


def back_substitute(list ech, list piv, p):
    cdef u64 pp = p
    cdef Py_ssize_t m = len(ech)
    cdef Py_ssize_t k, i, j, c, n
    cdef u64 coef, e
    cdef u64[::1] rk, ri
    for k in range(m - 1, 0, -1):
        rk = ech[k]
        c = piv[k]
        n = rk.shape[0]
        for i in range(k):
            ri = ech[i]
            coef = ri[c]
            if coef:
                for j in range(c, n):
                    e = rk[j]
                    if e:
                        ri[j] = (ri[j] + pp - mulmod(coef, e, pp)) % pp
    return None


def matmul_modp(A, B, p):
    cdef u64 pp = p
    A = np.ascontiguousarray(A, dtype=np.uint64)
    B = np.ascontiguousarray(B, dtype=np.uint64)
    cdef u64[:, ::1] Av = A
    cdef u64[:, ::1] Bv = B
    cdef Py_ssize_t m = Av.shape[0]
    cdef Py_ssize_t kk = Av.shape[1]
    cdef Py_ssize_t n = Bv.shape[1]
    out = np.zeros((m, n), dtype=np.uint64)
    cdef u64[:, ::1] Cv = out
    cdef Py_ssize_t i, t, j
    cdef u64 a
    with nogil:
        for i in range(m):
            for t in range(kk):
                a = Av[i, t]
                if a:
                    for j in range(n):
                        if Bv[t, j]:
                            Cv[i, j] = (Cv[i, j] + mulmod(a, Bv[t, j], pp)) % pp
    return out
