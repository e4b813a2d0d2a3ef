"""Linear algebra backends.

The mod-p kernel prefers the compiled extension and falls back to the
pure-Python implementation with the same contract; KERNEL_NAME records
which one is live.  Exact rational elimination lives in exact.py.
"""

import numpy as np

try:
    from . import _modp_cy as _kernel

    HAVE_EXT = True
except ImportError:
    from . import _modp_py as _kernel

    HAVE_EXT = False

KERNEL_NAME = _kernel.name

from .exact import ExactEchelon, exact_nullspace, exact_rank  # noqa: E402


def matmul_modp(A, B, p):
    A = np.ascontiguousarray(A, dtype=np.uint64)
    B = np.ascontiguousarray(B, dtype=np.uint64)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    return _kernel.matmul_modp(A, B, p)


class ModpEchelon:
    """Incremental row echelon over F_p, p prime in (2^50, 2^62).

    Stored rows keep the invariant that each is zero at the pivot
    columns of all earlier rows, so one insertion-order reduction pass
    suffices for any incoming row.
    """

    def __init__(self, n_cols: int, p: int):
        self.n_cols = n_cols
        self.p = p
        self.rows = []  # uint64 arrays, insertion order
        self.piv = []  # pivot column per row
        self.n_rows_consumed = 0
        self._rref = False

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_full_rank(self) -> bool:
        return len(self.rows) == self.n_cols

    def memory_bytes(self) -> int:
        return 8 * len(self.rows) * self.n_cols

    def add_row(self, values) -> bool:
        """Insert one row (any integer sequence); True if the rank grew."""
        self.n_rows_consumed += 1
        row = _kernel.prepare_row(values, self.p)
        if row.shape[0] != self.n_cols:
            raise ValueError("row width mismatch")
        col = _kernel.reduce_row(self.rows, self.piv, row, self.p)
        if col < 0:
            return False
        self.rows.append(row)
        self.piv.append(col)
        self._rref = False
        return True

    def rref(self):
        """(rows, pivot_cols) sorted by pivot, fully back-substituted."""
        order = sorted(range(len(self.piv)), key=lambda i: self.piv[i])
        self.rows = [self.rows[i] for i in order]
        self.piv = [self.piv[i] for i in order]
        if not self._rref:
            _kernel.back_substitute(self.rows, self.piv, self.p)
            self._rref = True
        return self.rows, self.piv

    def nullspace(self) -> np.ndarray:
        """Basis of the mod-p nullspace of the stored row space, one row
        per free column, entries in [0, p)."""
        rows, piv = self.rref()
        piv_set = set(piv)
        free = [c for c in range(self.n_cols) if c not in piv_set]
        out = np.zeros((len(free), self.n_cols), dtype=np.uint64)
        p = self.p
        for i, f in enumerate(free):
            out[i, f] = 1
            for k, pc in enumerate(piv):
                v = int(rows[k][f])
                if v:
                    out[i, pc] = p - v
        return out


def lift_centered(vec, p) -> np.ndarray:
    """Entrywise lift from [0, p) to (-p/2, p/2], as int64 (p < 2^62)."""
    arr = np.asarray(vec, dtype=np.uint64)
    half = p // 2
    out = arr.astype(np.int64)
    wrap = arr > half
    out[wrap] -= np.int64(p)
    return out
