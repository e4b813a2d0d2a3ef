"""Exact and mod-p elimination kernels, prime utilities, reconstruction."""

import random
from fractions import Fraction

import numpy as np
import pytest

import ncinv.linalg as L
from ncinv.linalg import (
    ExactEchelon,
    HAVE_EXT,
    ModpEchelon,
    exact_nullspace,
    exact_rank,
    lift_centered,
    matmul_modp,
)
from ncinv.linalg import _modp_py
from ncinv.modular import (
    PRIME_HI,
    PRIME_LO,
    certification_prime,
    check_prime,
    rational_reconstruct,
)

P = certification_prime("test-linalg")


class TestPrimes:
    def test_range_and_primality(self):
        import sympy

        for seed in range(5):
            p = certification_prime(seed)
            assert PRIME_LO < p < PRIME_HI
            assert sympy.isprime(p)

    def test_deterministic_in_seed(self):
        assert certification_prime("a") == certification_prime("a")
        assert certification_prime("a") != certification_prime("b")

    def test_check_prime_accepts(self):
        assert check_prime(P) == P

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            check_prime(1000003)  # prime, but must exceed 2^50

    def test_composite_rejected(self):
        composite = (1 << 51) + 1  # divisible by 3
        with pytest.raises(ValueError):
            check_prime(composite)


class TestRationalReconstruct:
    @pytest.mark.parametrize("num,den", [(3, 7), (-22, 5), (0, 1), (123456, 654321)])
    def test_roundtrip(self, num, den):
        f = Fraction(num, den)
        x = f.numerator * pow(f.denominator, -1, P) % P
        assert rational_reconstruct(x, P) == f

    def test_no_small_fraction(self):
        # mod 101 the bound is isqrt(50) = 7 and 23 matches no fraction
        # with numerator and denominator both below it
        assert rational_reconstruct(23, 101) is None

    def test_integer_fast_case(self):
        assert rational_reconstruct(12345, P) == Fraction(12345)


class TestLiftCentered:
    def test_boundaries(self):
        vec = np.array([0, 1, P - 1, P // 2, P // 2 + 1], dtype=np.uint64)
        out = lift_centered(vec, P)
        assert out.tolist() == [0, 1, -1, P // 2, -(P - P // 2 - 1) - 0]
        assert out.tolist()[4] == (P // 2 + 1) - P

    def test_range(self):
        rng = random.Random(7)
        vec = np.array([rng.randrange(P) for _ in range(200)], dtype=np.uint64)
        out = lift_centered(vec, P)
        assert all(-P // 2 <= v <= P // 2 for v in out.tolist())
        assert all((int(v) - int(x)) % P == 0 for v, x in zip(out.tolist(), vec.tolist()))


def _random_int_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


class TestModpEchelon:
    def test_identity_rank(self):
        ech = ModpEchelon(3, P)
        for row in np.eye(3, dtype=np.uint64):
            assert ech.add_row(row)
        assert ech.rank == 3
        assert ech.is_full_rank()

    def test_zero_rows(self):
        ech = ModpEchelon(4, P)
        assert not ech.add_row(np.zeros(4, dtype=np.uint64))
        assert ech.rank == 0

    def test_proportional_rows(self):
        ech = ModpEchelon(2, P)
        assert ech.add_row([1, 1])
        assert not ech.add_row([2, 2])
        assert ech.rank == 1

    def test_negative_entries_reduced(self):
        ech = ModpEchelon(2, P)
        ech.add_row([-1, 1])
        ech.add_row([1, -1])
        assert ech.rank == 1

    def test_rank_nullity_and_orthogonality(self):
        rng = random.Random(123)
        rows = _random_int_matrix(rng, 6, 10)
        ech = ModpEchelon(10, P)
        for row in rows:
            ech.add_row(row)
        null = ech.nullspace()
        assert ech.rank + null.shape[0] == 10
        for row in rows:
            for i in range(null.shape[0]):
                dot = sum(int(a) * int(b) for a, b in zip(row, null[i])) % P
                assert dot == 0

    def test_rref_idempotent(self):
        rng = random.Random(5)
        ech = ModpEchelon(6, P)
        for row in _random_int_matrix(rng, 4, 6):
            ech.add_row(row)
        rows1, piv1 = ech.rref()
        rows2, piv2 = ech.rref()
        assert piv1 == piv2
        assert all((a == b).all() for a, b in zip(rows1, rows2))
        # rows are zero at every other pivot after back substitution
        for i, row in enumerate(rows1):
            for j, pc in enumerate(piv1):
                expected = 1 if i == j else 0
                assert int(row[pc]) == expected

    def test_row_width_checked(self):
        ech = ModpEchelon(3, P)
        with pytest.raises(ValueError):
            ech.add_row([1, 2])


class TestMatmulModp:
    def test_against_object_reference(self):
        rng = random.Random(42)
        A = np.array(_random_int_matrix(rng, 5, 7, 0, 10**9), dtype=np.uint64)
        B = np.array(_random_int_matrix(rng, 7, 4, 0, 10**9), dtype=np.uint64)
        got = matmul_modp(A, B, P)
        ref = (A.astype(object) @ B.astype(object)) % P
        assert (got.astype(object) == ref).all()

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            matmul_modp(np.ones((2, 3), dtype=np.uint64),
                        np.ones((2, 3), dtype=np.uint64), P)


@pytest.mark.skipif(not HAVE_EXT, reason="compiled kernel not built")
class TestKernelParity:
    """The pure-Python and compiled kernels must agree operation by
    operation; the driver is exercised against each in turn."""

    def _with_kernel(self, kernel, fn):
        saved = L._kernel
        L._kernel = kernel
        try:
            return fn()
        finally:
            L._kernel = saved

    def test_echelon_and_nullspace_parity(self):
        rng = random.Random(99)
        rows = _random_int_matrix(rng, 12, 8, -50, 50)

        def run():
            ech = ModpEchelon(8, P)
            grew = [ech.add_row(r) for r in rows]
            return grew, ech.rank, ech.nullspace()

        g1, r1, n1 = run()
        g2, r2, n2 = self._with_kernel(_modp_py, run)
        assert g1 == g2
        assert r1 == r2
        assert (n1 == n2).all()

    def test_matmul_parity(self):
        rng = random.Random(7)
        A = np.array(_random_int_matrix(rng, 4, 6, 0, 2**31), dtype=np.uint64)
        B = np.array(_random_int_matrix(rng, 6, 3, 0, 2**31), dtype=np.uint64)
        got = matmul_modp(A, B, P)
        ref = self._with_kernel(_modp_py, lambda: matmul_modp(A, B, P))
        assert (got == ref).all()


class TestExactEchelon:
    def test_identity_rank_three(self):
        ech = ExactEchelon(3)
        for i in range(3):
            ech.add_row({i: 1})
        assert ech.rank == 3

    def test_zero_matrix_rank_zero(self):
        rank, consumed = exact_rank([{}, {}], 4)
        assert rank == 0
        assert consumed == 2

    def test_proportional_rows_rank_one(self):
        rank, _ = exact_rank([{0: 1, 1: 1}, {0: 2, 1: 2}], 2)
        assert rank == 1

    def test_fraction_rows(self):
        rank, _ = exact_rank([{0: Fraction(1, 2), 1: Fraction(1, 3)},
                              {0: 3, 1: 2}], 2)
        assert rank == 1

    def test_nullspace_orthogonal_and_complete(self):
        rng = random.Random(31)
        rows = []
        for _ in range(5):
            dense = _random_int_matrix(rng, 1, 9)[0]
            rows.append({i: v for i, v in enumerate(dense) if v})
        basis, rank = exact_nullspace(rows, 9)
        assert rank + len(basis) == 9
        for vec in basis:
            for row in rows:
                dot = sum(Fraction(v) * vec.get(c, 0) for c, v in row.items())
                assert dot == 0

    def test_early_stop_consumes_minimum(self):
        rows = [{0: 1}, {1: 1}, {0: 1, 1: 5}, {0: 2}]
        rank, consumed = exact_rank(rows, 2)
        assert rank == 2
        assert consumed == 2
