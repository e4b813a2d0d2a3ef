"""Sparse Gaussian elimination over the rationals.

Rows are dicts mapping column index to a nonzero Fraction.  The echelon
structure keeps one normalized row per pivot column; incoming rows are
reduced against every stored row whose pivot they touch.  Pivot choice
is the sparsest candidate column of the reduced row, which keeps fill
low on the very sparse rows these ideals produce.
"""

from fractions import Fraction


class ExactEchelon:
    def __init__(self, n_cols: int):
        if n_cols < 0:
            raise ValueError("n_cols must be nonnegative")
        self.n_cols = n_cols
        self.pivot_rows = {}  # pivot col -> normalized sparse row
        self.col_count = {}  # col -> how many stored rows touch it
        self.n_rows_consumed = 0

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        """A copy of row reduced against the stored pivot rows."""
        row = {c: Fraction(v) for c, v in row.items() if v}
        for c in sorted(row):
            if c not in row:
                continue
            piv = self.pivot_rows.get(c)
            if piv is None:
                continue
            coef = row.pop(c)
            for cc, vv in piv.items():
                if cc == c:
                    continue
                new = row.get(cc, 0) - coef * vv
                if new:
                    row[cc] = new
                else:
                    row.pop(cc, None)
        return row

    def add_row(self, row: dict) -> bool:
        """Reduce and insert; True when the rank grew."""
        self.n_rows_consumed += 1
        row = self.reduce(row)
        if not row:
            return False
        pivot = min(row, key=lambda c: (self.col_count.get(c, 0), c))
        inv = 1 / row[pivot]
        norm = {c: v * inv for c, v in row.items()}
        # keep stored rows fully reduced against each other
        for pc, prow in self.pivot_rows.items():
            coef = prow.get(pivot)
            if coef is None:
                continue
            for cc, vv in norm.items():
                if cc == pivot:
                    prow.pop(pivot, None)
                    self.col_count[pivot] -= 1
                    continue
                new = prow.get(cc, 0) - coef * vv
                if new:
                    if cc not in prow:
                        self.col_count[cc] = self.col_count.get(cc, 0) + 1
                    prow[cc] = new
                elif cc in prow:
                    del prow[cc]
                    self.col_count[cc] -= 1
        self.pivot_rows[pivot] = norm
        for cc in norm:
            self.col_count[cc] = self.col_count.get(cc, 0) + 1
        return True

    def is_full_rank(self) -> bool:
        return len(self.pivot_rows) == self.n_cols

    def nullspace(self):
        """Basis of {v : row . v = 0 for every stored row}, one vector per
        free column, as sparse dicts with Fraction entries."""
        pivots = set(self.pivot_rows)
        basis = []
        for f in range(self.n_cols):
            if f in pivots:
                continue
            vec = {f: Fraction(1)}
            for pc, prow in self.pivot_rows.items():
                coef = prow.get(f)
                if coef:
                    vec[pc] = -coef
            basis.append(vec)
        return basis


def exact_rank(rows, n_cols: int, stop_at_full: bool = True):
    """Rank of the row list/stream; returns (rank, n_rows_consumed)."""
    ech = ExactEchelon(n_cols)
    for row in rows:
        ech.add_row(row)
        if stop_at_full and ech.is_full_rank():
            break
    return ech.rank, ech.n_rows_consumed


def exact_nullspace(rows, n_cols: int):
    """Nullspace basis of the row stream; returns (basis, rank)."""
    ech = ExactEchelon(n_cols)
    for row in rows:
        ech.add_row(row)
        if ech.is_full_rank():
            break
    return ech.nullspace(), ech.rank
