"""Compare the compiled mod-p kernel against the pure-Python fallback.

Both expose the same contract, so the workloads run verbatim on each:
dense matrix product mod p, echelon insertion, and back substitution.
Results must agree bit for bit; the table reports wall time and the
speedup of the compiled extension.

Usage: python benchmarks/bench_kernels.py [--size N] [--rows R]
       [--cols C] [--seed S]
"""

import argparse
import random
import sys
import time

import numpy as np

from ncinv.linalg import HAVE_EXT, _modp_py
from ncinv.modular import certification_prime

if HAVE_EXT:
    from ncinv.linalg import _modp_cy
else:
    _modp_cy = None


def _random_matrix(rng, rows, cols, p):
    return np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
        dtype=np.uint64,
    )


def bench_matmul(kernel, A, B, p):
    t0 = time.perf_counter()
    out = kernel.matmul_modp(A, B, p)
    return time.perf_counter() - t0, out


def bench_echelon(kernel, rows_int, n_cols, p):
    t0 = time.perf_counter()
    rows, piv = [], []
    for values in rows_int:
        row = kernel.prepare_row(values, p)
        col = kernel.reduce_row(rows, piv, row, p)
        if col >= 0:
            rows.append(row)
            piv.append(col)
    order = sorted(range(len(piv)), key=lambda i: piv[i])
    rows = [rows[i] for i in order]
    piv = [piv[i] for i in order]
    kernel.back_substitute(rows, piv, p)
    elapsed = time.perf_counter() - t0
    return elapsed, (len(rows), [r.copy() for r in rows], piv)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=96,
                    help="square matrix size for the product benchmark")
    ap.add_argument("--rows", type=int, default=160,
                    help="row count for the echelon benchmark")
    ap.add_argument("--cols", type=int, default=240,
                    help="column count for the echelon benchmark")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    p = certification_prime(args.seed)
    rng = random.Random(args.seed)
    print("prime: %d" % p)
    print("compiled extension available: %s" % HAVE_EXT)
    if not HAVE_EXT:
        print("nothing to compare against; timing the fallback only")

    kernels = [("python", _modp_py)]
    if HAVE_EXT:
        kernels.insert(0, ("compiled", _modp_cy))

    A = _random_matrix(rng, args.size, args.size, p)
    B = _random_matrix(rng, args.size, args.size, p)
    # low-rank-ish input so reduction does real cancellation work
    base = _random_matrix(rng, max(args.rows // 2, 1), args.cols, p)
    ech_rows = []
    for _ in range(args.rows):
        u = base[rng.randrange(base.shape[0])]
        v = base[rng.randrange(base.shape[0])]
        ech_rows.append([int(x) for x in (u + v) % p])

    results = {}
    for label, kernel in kernels:
        t_mm, out_mm = bench_matmul(
            kernel, A, B, p)
        t_ech, out_ech = bench_echelon(kernel, ech_rows, args.cols, p)
        results[label] = {
            "matmul": (t_mm, out_mm),
            "echelon": (t_ech, out_ech),
        }
        print("%-9s matmul %dx%d: %8.3f ms   echelon %dx%d (rank %d): "
              "%8.3f ms"
              % (label, args.size, args.size, 1e3 * t_mm,
                 args.rows, args.cols, out_ech[0], 1e3 * t_ech))

    if HAVE_EXT:
        for workload in ("matmul", "echelon"):
            fast = results["compiled"][workload]
            slow = results["python"][workload]
            if workload == "matmul":
                same = np.array_equal(fast[1], slow[1])
            else:
                same = (fast[1][0] == slow[1][0]
                        and fast[1][2] == slow[1][2]
                        and all(np.array_equal(x, y)
                                for x, y in zip(fast[1][1], slow[1][1])))
            verdict = "identical" if same else "DIFFER"
            print("%-9s outputs %s, speedup %.1fx"
                  % (workload, verdict, slow[0] / fast[0]))
            if not same:
                return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
