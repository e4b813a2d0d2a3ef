"""Perp dimensions, bases, Hilbert series, certification, caching."""

import json
import os
from fractions import Fraction

import pytest

from ncinv import perp
from ncinv.commutative import CommPoly, chi
from ncinv.generators import generator_list, ideal_row_stream
from ncinv.linalg import ExactEchelon
from ncinv.modular import certification_prime
from ncinv.perp import (
    EXACT,
    MODP,
    MODP_CERTIFIED,
    ResourceLimitError,
    SparseRowMatrix,
    rank,
)
from ncinv.words import FreePoly, Word, apply_reversed, d_letter, delta_w


def FP(n, *terms):
    return FreePoly(n, {Word(w, n): Fraction(c) for c, w in terms})


class TestRankOp:
    def test_identity(self):
        M = SparseRowMatrix(3, [{0: 1}, {1: 1}, {2: 1}])
        r = rank(M, EXACT)
        assert r.rank == 3 and r.mode == EXACT and r.prime is None

    def test_zero(self):
        assert rank(SparseRowMatrix(4, [{}, {}]), EXACT).rank == 0

    def test_proportional(self):
        M = SparseRowMatrix(2, [{0: 1, 1: 1}, {0: 2, 1: 2}])
        assert rank(M, EXACT).rank == 1

    def test_modp_agrees_and_records_prime(self):
        M = SparseRowMatrix(5, [{0: 1, 4: -2}, {1: 3}, {0: 2, 4: -4}])
        r = rank(M, MODP, seed=11)
        assert r.rank == 2
        assert r.prime == certification_prime(11)

    def test_certified_on_fractions(self):
        M = SparseRowMatrix(3, [{0: Fraction(1, 2), 1: Fraction(-1, 3)},
                                {2: Fraction(7, 5)}])
        r = rank(M, MODP_CERTIFIED, seed=3)
        assert r.rank == 2
        assert r.mode == MODP_CERTIFIED

    def test_small_prime_rejected(self):
        M = SparseRowMatrix(2, [{0: 1}])
        with pytest.raises(ValueError):
            rank(M, MODP, prime=97)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            rank(SparseRowMatrix(1, []), "float64")


class TestPerpDimension:
    def test_degree_zero_is_one(self):
        for system in ("ncsym", "ncqsym", "sym", "qsym"):
            assert perp.perp_dimension(system, 3, 0).perp_dim == 1

    def test_ncsym_n2(self):
        assert perp.perp_dimension("ncsym", 2, 1).perp_dim == 1
        assert perp.perp_dimension("ncsym", 2, 2).perp_dim == 0

    def test_ncsym_n3_degree1(self):
        assert perp.perp_dimension("ncsym", 3, 1).perp_dim == 2

    def test_record_fields(self):
        r = perp.perp_dimension("ncsym", 3, 2, seed=5)
        assert (r.system, r.n, r.d) == ("ncsym", 3, 2)
        assert r.n_cols == 9
        assert r.rank + r.perp_dim == r.n_cols
        assert r.mode == MODP_CERTIFIED
        assert r.prime is not None

    def test_exact_matches_certified(self):
        for n in (2, 3):
            for d in range(1, 5):
                e = perp.perp_dimension("ncsym", n, d, mode=EXACT).perp_dim
                c = perp.perp_dimension("ncsym", n, d).perp_dim
                assert e == c, (n, d, e, c)

    def test_modp_agrees_here(self):
        for d in range(1, 5):
            m = perp.perp_dimension("ncsym", 3, d, mode=MODP)
            e = perp.perp_dimension("ncsym", 3, d, mode=EXACT)
            assert m.perp_dim == e.perp_dim
            assert m.mode == MODP

    def test_two_primes_same_modp_dimension(self):
        a = perp.perp_dimension("ncsym", 3, 3, mode=MODP, seed=1)
        b = perp.perp_dimension("ncsym", 3, 3, mode=MODP, seed=2)
        assert a.prime != b.prime
        assert a.perp_dim == b.perp_dim == 3

    def test_exact_column_cap(self):
        with pytest.raises(ResourceLimitError):
            perp.perp_dimension("ncsym", 4, 9, mode=EXACT)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            perp.perp_dimension("ncsym", 2, -1)


class TestHilbertSeries:
    def test_ncsym_n3(self):
        hs = perp.hilbert_series("ncsym", 3, 4)
        assert hs.coefficients == (1, 2, 3, 3, 0)

    def test_ncsym_n5_low_degrees(self):
        hs = perp.hilbert_series("ncsym", 5, 3)
        assert hs.coefficients == (1, 4, 15, 55)

    def test_ncqsym_one_variable(self):
        hs = perp.hilbert_series("ncqsym", 1, 3)
        assert hs.coefficients == (1, 0, 0, 0)

    def test_iterable_and_provenance(self):
        hs = perp.hilbert_series("ncsym", 2, 3)
        assert list(hs) == [1, 1, 0, 0]
        assert [r.d for r in hs.results] == [0, 1, 2, 3]
        assert all(r.system == "ncsym" for r in hs.results)

    def test_zero_tail_needs_no_prime(self):
        hs = perp.hilbert_series("ncsym", 2, 5)
        # once the tower dies the remaining degrees are free
        assert hs.results[4].prime is None
        assert hs.results[4].perp_dim == 0

    def test_exact_mode(self):
        hs = perp.hilbert_series("ncqsym", 2, 4, mode=EXACT)
        assert hs.coefficients == (1, 1, 0, 0, 0)
        assert all(r.mode == EXACT for r in hs.results)


class TestPerpBasis:
    def test_ncsym_n2_d1_span(self):
        basis = perp.perp_basis("ncsym", 2, 1)
        assert len(basis) == 1
        P = basis[0]
        # proportional to x1 - x2
        c1 = P.coeff(Word((1,), 2))
        c2 = P.coeff(Word((2,), 2))
        assert c1 == -c2 and c1 != 0

    def test_ncsym_n2_d2_empty(self):
        assert perp.perp_basis("ncsym", 2, 2) == []

    def test_degree_zero(self):
        basis = perp.perp_basis("ncsym", 3, 0)
        assert len(basis) == 1 and basis[0].coeff(Word((), 3)) == 1

    def test_members_are_in_perp(self):
        for system in ("ncsym", "ncqsym"):
            for n, d in ((2, 1), (3, 2), (3, 3)):
                for P in perp.perp_basis(system, n, d):
                    assert perp.is_in_perp(P, system, n)

    def test_certified_basis_spans_same_space(self):
        for n, d in ((2, 1), (3, 2), (3, 3)):
            exact = perp.perp_basis("ncsym", n, d, mode=EXACT)
            cert = perp.perp_basis("ncsym", n, d, mode=MODP_CERTIFIED)
            assert len(exact) == len(cert)
            for P in cert:
                assert perp.is_in_perp(P, "ncsym", n)
            # independence: joint coordinate matrix keeps the same rank
            ech = ExactEchelon(n ** d)
            for P in cert:
                ech.add_row({c: v for c, v in enumerate(_coords(P, n, d)) if v})
            assert ech.rank == len(cert)

    def test_modp_refused(self):
        with pytest.raises(ValueError):
            perp.perp_basis("ncsym", 2, 1, mode=MODP)


def _coords(P, n, d):
    from ncinv.words import word_to_int

    out = [0] * (n ** d)
    for w, c in P.terms.items():
        out[word_to_int(w)] = c
    return out


class TestInPerp:
    def test_difference_is_in(self):
        assert perp.is_in_perp(FP(2, (1, (1,)), (-1, (2,))), "ncsym", 2)

    def test_generator_is_not(self):
        assert not perp.is_in_perp(FP(2, (1, (1,)), (1, (2,))), "ncsym", 2)

    def test_delta_w_with_staircase_exponents(self):
        w = Word((1, 1, 2), 3)  # chi(w) = x1^2 x2, exponents (2,1,0)
        assert perp.is_in_perp(delta_w(w, 3), "ncsym", 3)

    def test_zero_and_constants(self):
        assert perp.is_in_perp(FreePoly.zero(3), "ncsym", 3)
        assert perp.is_in_perp(FreePoly.one(3), "ncsym", 3)

    def test_inhomogeneous_rejected(self):
        P = FP(2, (1, (1,)), (1, (1, 2)))
        with pytest.raises(ValueError):
            perp.is_in_perp(P, "ncsym", 2)

    def test_wrong_type_rejected(self):
        with pytest.raises(TypeError):
            perp.is_in_perp(CommPoly.one(2), "ncsym", 2)
        with pytest.raises(TypeError):
            perp.is_in_perp(FreePoly.one(2), "sym", 2)


class TestCertifyModp:
    def test_ncsym_n3_d3(self):
        r = perp.certify_modp("ncsym", 3, 3)
        assert r.perp_dim == 3
        assert r.mode == MODP_CERTIFIED

    def test_zero_nullspace_vacuous(self):
        r = perp.certify_modp("ncsym", 2, 3)
        assert r.perp_dim == 0

    def test_explicit_prime_recorded(self):
        p = certification_prime("explicit")
        r = perp.certify_modp("ncsym", 3, 2, prime=p)
        assert r.prime == p


class TestClosureProperties:
    """Perp bases are closed under letter derivatives, and applying any
    generator lands back in the lower-degree perp."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_derivation_closure(self, n):
        for d in range(1, 5):
            lower = perp.perp_basis("ncsym", n, d - 1)
            span = ExactEchelon(n ** (d - 1))
            for Q in lower:
                span.add_row({c: v for c, v in enumerate(_coords(Q, n, d - 1)) if v})
            base_rank = span.rank
            for P in perp.perp_basis("ncsym", n, d):
                for a in range(1, n + 1):
                    DP = d_letter(a, P)
                    if DP.is_zero():
                        continue
                    row = {c: v for c, v in enumerate(_coords(DP, n, d - 1)) if v}
                    assert not span.add_row(row), (n, d, a)
                    assert span.rank == base_rank

    @pytest.mark.parametrize("n", [2, 3])
    def test_generator_application_stays_in_perp(self, n):
        for d in range(1, 5):
            basis = perp.perp_basis("ncsym", n, d)
            gens = [g for _, g in generator_list("ncsym", n, d)]
            for P in basis:
                for g in gens:
                    R = apply_reversed(g, P)
                    assert perp.is_in_perp(R, "ncsym", n), (n, d, g)


class TestCommutative:
    def test_sym_dimensions_sum_to_factorial(self):
        assert perp.comm_total_dimension("sym", 1) == 1
        assert perp.comm_total_dimension("sym", 2) == 2
        assert perp.comm_total_dimension("sym", 3) == 6

    def test_qsym_dimensions_sum_to_catalan(self):
        assert perp.comm_total_dimension("qsym", 1) == 1
        assert perp.comm_total_dimension("qsym", 2) == 2
        assert perp.comm_total_dimension("qsym", 3) == 5

    def test_comm_perp_dimension_wrapper(self):
        assert perp.comm_perp_dimension("sym", 2, 1) == 1
        with pytest.raises(ValueError):
            perp.comm_perp_dimension("ncsym", 2, 1)

    def test_comm_basis_members_in_perp(self):
        for system in ("sym", "qsym"):
            for d in range(0, 4):
                for P in perp.perp_basis(system, 3, d):
                    assert perp.is_in_perp(P, system, 3), (system, d)

    def test_sym_small_generators_same_dimension(self):
        for d in range(1, 6):
            full = perp.perp_dimension("sym", 3, d).perp_dim
            small = perp.perp_dimension("sym", 3, d, small_gens=True).perp_dim
            assert full == small, d

    def test_comm_mode_coerced_to_exact(self):
        r = perp.perp_dimension("sym", 3, 2, mode=MODP_CERTIFIED)
        assert r.mode == EXACT and r.prime is None

    def test_psi_embeds_comm_perp_into_free_perp(self):
        from ncinv.commutative import psi

        for system, free in (("sym", "ncsym"), ("qsym", "ncqsym")):
            for n, d in ((2, 1), (3, 2), (3, 3)):
                for P in perp.perp_basis(system, n, d):
                    assert perp.is_in_perp(psi(P), free, n), (system, n, d)


class TestCaching:
    def test_write_then_read(self, tmp_path):
        cdir = str(tmp_path / "cache")
        r1 = perp.perp_dimension("ncsym", 3, 3, seed=4, cache_dir=cdir)
        files = os.listdir(cdir)
        assert files
        r2 = perp.perp_dimension("ncsym", 3, 3, seed=4, cache_dir=cdir)
        assert r1 == r2

    def test_record_schema(self, tmp_path):
        cdir = str(tmp_path / "cache")
        perp.perp_dimension("ncsym", 3, 2, seed=4, cache_dir=cdir)
        path = [f for f in os.listdir(cdir) if "_d2_" in f][0]
        with open(os.path.join(cdir, path)) as fh:
            rec = json.load(fh)
        assert set(rec) == {"system", "n", "d", "mode", "prime", "n_cols",
                            "rank", "perp_dim", "elapsed_ms"}
        assert rec["mode"] == "modp_certified"
        assert rec["n_cols"] == 9

    def test_read_through_wins(self, tmp_path):
        cdir = str(tmp_path / "cache")
        perp.perp_dimension("ncsym", 2, 1, seed=4, cache_dir=cdir)
        fname = [f for f in os.listdir(cdir) if "_d1_" in f][0]
        path = os.path.join(cdir, fname)
        with open(path) as fh:
            rec = json.load(fh)
        rec["perp_dim"] = 77  # poison: proves the cache is consulted
        with open(path, "w") as fh:
            json.dump(rec, fh)
        assert perp.perp_dimension("ncsym", 2, 1, seed=4,
                                   cache_dir=cdir).perp_dim == 77

    def test_env_variable_cache_dir(self, tmp_path, monkeypatch):
        cdir = str(tmp_path / "envcache")
        monkeypatch.setenv("NCINV_CACHE_DIR", cdir)
        perp.perp_dimension("ncsym", 2, 1, seed=4)
        assert os.listdir(cdir)

    def test_different_seed_different_file(self, tmp_path):
        cdir = str(tmp_path / "cache")
        perp.perp_dimension("ncsym", 2, 1, seed=1, cache_dir=cdir)
        perp.perp_dimension("ncsym", 2, 1, seed=2, cache_dir=cdir)
        assert len([f for f in os.listdir(cdir) if "_d1_" in f]) == 2


class TestRowStreamIndependence:
    def test_dimension_independent_of_row_order(self):
        rows = list(perp._free_row_codes("ncsym", 3, 3))
        assert _fill(rows, 27).rank == _fill(rows[::-1], 27).rank


def _fill(rows, n_cols):
    ech = ExactEchelon(n_cols)
    for row in rows:
        ech.add_row(row)
    return ech
