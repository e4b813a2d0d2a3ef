"""Pure-Python mod-p row reduction kernel.

Mirrors the compiled kernel in _modp_cy exactly: same functions, same
storage contract (1-D uint64 arrays holding values in [0, p)).  All
arithmetic happens on Python ints, so primes up to 2^62 are safe; the
compiled kernel does the same with 128-bit hardware arithmetic.
"""

import numpy as np

name = "python"


def prepare_row(values, p):
    """Kernel row storage from any integer sequence, reduced mod p."""
    return np.array([int(v) % p for v in values], dtype=np.uint64)


def reduce_row(ech, piv, row, p):
    """Reduce row in place against the echelon rows (insertion order),
    normalize its leading entry to 1, and return its pivot column, or
    -1 when the row reduces to zero."""
    r = row.tolist()
    n = len(r)
    for k in range(len(ech)):
        c = piv[k]
        coef = r[c]
        if coef:
            er = ech[k].tolist()
            for j in range(c, n):
                if er[j]:
                    r[j] = (r[j] - coef * er[j]) % p
    for j in range(n):
        if r[j]:
            inv = pow(r[j], p - 2, p)
            if inv != 1:
                for k in range(j, n):
                    if r[k]:
                        r[k] = (r[k] * inv) % p
            row[:] = r
            return j
    row[:] = r
    return -1


def back_substitute(ech, piv, p):
    """Full reduction of an echelon list already sorted by pivot column:
    afterwards every row is zero at every other row's pivot."""
    m = len(ech)
    for k in range(m - 1, 0, -1):
        rk = ech[k].tolist()
        c = piv[k]
        for i in range(k):
            ri = ech[i]
            coef = int(ri[c])
            if coef:
                li = ri.tolist()
                for j in range(c, len(li)):
                    if rk[j]:
                        li[j] = (li[j] - coef * rk[j]) % p
                ri[:] = li


def matmul_modp(A, B, p):
    """(A @ B) mod p for uint64 matrices with entries in [0, p)."""
    A_l = A.tolist()
    B_l = B.tolist()
    m, kk = A.shape
    n = B.shape[1]
    out = np.zeros((m, n), dtype=np.uint64)
    for i in range(m):
        Ai = A_l[i]
        acc = [0] * n
        for t in range(kk):
            a = Ai[t]
            if a:
                Bt = B_l[t]
                for j in range(n):
                    if Bt[j]:
                        acc[j] = (acc[j] + a * Bt[j]) % p
        out[i] = acc
    return out
