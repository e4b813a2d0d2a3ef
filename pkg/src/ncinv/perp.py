"""Degree-graded perp spaces of the generated ideals.

Three computation modes:

exact            rank/nullspace of the ideal row space over the
                 rationals in word (or monomial) coordinates.
modp             mod-p nullity for a recorded prime; an upper bound on
                 the perp dimension (lower bound on rank).
modp_certified   the default.  Degrees are computed bottom-up: the perp
                 at degree d sits inside sum_a x_a * perp(d-1), so its
                 elements are solved for in that candidate basis mod p,
                 reconstructed to small integer vectors, and verified
                 exactly against every ideal row.  Verified vectors are
                 exact perp members and mod-p nullity bounds the
                 dimension from above, so on success the reported
                 dimension is exact and the basis is an exact integer
                 basis.

Commutative systems are small enough that they always run exactly.
"""

import json
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .commutative import CommPoly, monomials
from .generators import (
    COMM_SYSTEMS,
    FREE_SYSTEMS,
    check_system,
    generator_supports,
    ideal_row_stream,
)
from .linalg import ExactEchelon, ModpEchelon, matmul_modp
from .modular import certification_prime, check_prime, rational_reconstruct
from .words import FreePoly, int_to_word

EXACT = "exact"
MODP = "modp"
MODP_CERTIFIED = "modp_certified"
MODES = (EXACT, MODP, MODP_CERTIFIED)

# hard ceilings; overridable per call
MAX_EXACT_COLS = 4096
MAX_MEMORY_BYTES = 3 << 30
COEFF_CAP = 1 << 31  # reconstructed basis entries must stay below this


class ResourceLimitError(RuntimeError):
    """A configured size or memory bound would be exceeded."""


class CertificationError(RuntimeError):
    """Mod-p certification failed even after retries."""


@dataclass(frozen=True)
class RankResult:
    rank: int
    mode: str
    prime: int | None
    n_rows_consumed: int


@dataclass(frozen=True)
class PerpResult:
    system: str
    n: int
    d: int
    mode: str
    prime: int | None
    n_cols: int
    rank: int
    perp_dim: int
    elapsed_ms: int

    def rank_result(self) -> RankResult:
        return RankResult(self.rank, self.mode, self.prime, -1)

    def cache_record(self) -> dict:
        return {
            "system": self.system,
            "n": self.n,
            "d": self.d,
            "mode": self.mode,
            "prime": self.prime,
            "n_cols": self.n_cols,
            "rank": self.rank,
            "perp_dim": self.perp_dim,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass(frozen=True)
class HilbertSeries:
    system: str
    n: int
    coefficients: tuple
    results: tuple  # one PerpResult per degree

    def __iter__(self):
        return iter(self.coefficients)


class SparseRowMatrix:
    """Rows as sparse {column: coefficient} dicts over n_cols columns."""

    def __init__(self, n_cols, rows):
        self.n_cols = n_cols
        self.rows = list(rows)


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def rank(M: SparseRowMatrix, mode=EXACT, prime=None, seed=0) -> RankResult:
    """Rank of the row space; EXACT over the rationals, MODP over F_p.

    MODP_CERTIFIED additionally lifts a mod-p nullspace basis and
    verifies it exactly against every row, which proves the mod-p rank
    equals the rational rank; on failure it falls back to EXACT.
    """
    _check_mode(mode)
    if mode == EXACT:
        ech = ExactEchelon(M.n_cols)
        for row in M.rows:
            ech.add_row(row)
        return RankResult(ech.rank, EXACT, None, ech.n_rows_consumed)
    p = check_prime(prime) if prime is not None else certification_prime(seed)
    int_rows = [_clear_denominators(row) for row in M.rows]
    ech = ModpEchelon(M.n_cols, p)
    for row in int_rows:
        dense = np.zeros(M.n_cols, dtype=object)
        for c, v in row.items():
            dense[c] = v
        ech.add_row(dense)
    if mode == MODP:
        return RankResult(ech.rank, MODP, p, ech.n_rows_consumed)
    for vec in ech.nullspace():
        fracs = [rational_reconstruct(int(x), p) for x in vec]
        if any(f is None for f in fracs):
            return rank(M, EXACT)
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        for row in int_rows:
            if sum(ints[c] * v for c, v in row.items()) != 0:
                return rank(M, EXACT)
    return RankResult(ech.rank, MODP_CERTIFIED, p, ech.n_rows_consumed)


def _clear_denominators(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    return {c: int(v * den) for c, v in row.items()}


# --- ideal rows in coordinates ---------------------------------------------------


def _free_row_codes(system, n, d, small_gens=False):
    """Sparse coordinate rows of every u*g*v at degree d (all coeffs 1)."""
    sups = generator_supports(system, n, d)
    for k, codes in sups:
        for du in range(d - k + 1):
            dv = d - k - du
            hi = n ** (k + dv)
            mid = n ** dv
            for cu in range(n ** du):
                base_u = cu * hi
                for cv in range(mid):
                    yield {base_u + t * mid + cv: 1 for t in codes}


def _comm_rows(system, n, d, small_gens=False):
    index = {m: i for i, m in enumerate(monomials(n, d))}
    for poly in ideal_row_stream(system, n, d, small_gens=small_gens):
        yield {index[m]: c for m, c in poly.terms.items()}


def _n_cols(system, n, d) -> int:
    if system in FREE_SYSTEMS:
        return n ** d
    return len(monomials(n, d))


def _ideal_rows(system, n, d, small_gens=False):
    if system in FREE_SYSTEMS:
        return _free_row_codes(system, n, d, small_gens)
    return _comm_rows(system, n, d, small_gens)


# --- the certified tower (free systems) -------------------------------------------
#
# The perp at degree d sits inside sum_a x_a * perp(d-1), so each level is
# the nullspace of the candidate matrix M: one row per pair (generator g,
# right word v), columns indexed by (letter a, previous basis element j).
# The exact basis at each level is kept implicitly as the chain of its
# candidate-coordinate factors C_1, ..., C_d (integer matrices): the word
# coordinate basis is B_d = C_d applied to x_a tensor B_(d-1).  Mod-q
# images of B_d for any prime q come cheaply from the chain, so M mod q
# is available for any q without ever expanding the (huge) exact entries.
#
#   upper bound   nullity_q(M mod q) >= nullity over Q = dim perp(d),
#                 for every prime, because M is the reduction of the
#                 integer candidate matrix over the exact basis B_(d-1).
#   lower bound   C_d is reconstructed from the mod-p nullspace (CRT over
#                 as many primes as its entries need), then M C_d^T = 0 is
#                 proved exactly: the product is checked mod fresh primes
#                 whose product exceeds the a-priori entry bound, so the
#                 integer product is identically zero.  The rows of C_d
#                 are independent (distinct pivots), hence dim >= nullity.
#
# Rows u*g*v with a nonempty left word u vanish on every candidate
# automatically: <u g v, x_a Q> = [u_1 = a] <u' g v, Q> and Q lies in the
# lower perp, which is orthogonal to all of its ideal rows by induction.
# Checking the (g, v) rows at every level therefore covers every ideal
# row.  A bad prime can only inflate a mod-p nullity or break pivot
# agreement; both are caught and retried with fresh primes.


MAX_CRT_PRIMES = 16
MAX_LEVEL_RETRIES = 3


class _Level:
    __slots__ = ("d", "dim", "chain_factor", "c_bits", "b_bits", "result")

    def __init__(self, d, dim, chain_factor, c_bits, b_bits, result):
        self.d = d
        self.dim = dim
        self.chain_factor = chain_factor  # object ndarray (dim x n*dim_prev)
        self.c_bits = c_bits
        self.b_bits = b_bits  # bound on bit size of exact word-basis entries
        self.result = result


def _mod_q(A, q):
    """Reduction of an integer (object or int64) matrix into [0, q)."""
    return (np.asarray(A, dtype=object) % q).astype(np.uint64)


def _word_image_modq(C_q, basis_q, n, q):
    """Word-coordinate images (m x n*W) of candidate rows C_q over the
    previous-level word basis (prev x W), all mod q."""
    m = C_q.shape[0]
    prev, w = basis_q.shape
    out = np.zeros((m, n * w), dtype=np.uint64)
    for a in range(n):
        out[:, a * w : (a + 1) * w] = matmul_modp(
            C_q[:, a * prev : (a + 1) * prev], basis_q, q
        )
    return out


def _chain_basis_modq(chain, n, q, upto):
    """Mod-q word basis at level `upto` from the chain factors."""
    basis = np.ones((1, 1), dtype=np.uint64)
    for e in range(upto):
        basis = _word_image_modq(_mod_q(chain[e], q), basis, n, q)
    return basis


def _m_blocks_modq(sups, basis_q, n, d, q, memory_cap):
    """Candidate-matrix row blocks mod q, one block per generator: block
    rows run over right words v, columns over (a, j); entry at (v, (a,j))
    is sum over the generator's words t with first letter a of
    basis_q[j, rest(t)*n^dv + v]."""
    m = basis_q.shape[0]
    for k, codes in sups:
        if k > d or not codes:
            continue
        w2 = n ** (d - k)
        if 16 * n * m * w2 > memory_cap:
            raise ResourceLimitError(
                f"candidate block needs {(16 * n * m * w2) >> 20} MiB, over the cap"
            )
        acc = np.zeros((n, m, w2), dtype=np.uint64)
        rest_width = n ** (k - 1)
        pending = 0
        for t in codes:
            a_idx, rest = divmod(t, rest_width)
            acc[a_idx] += basis_q[:, rest * w2 : (rest + 1) * w2]
            pending += 1
            if pending % 2 == 0:
                acc %= q  # entries stay below 3q < 2^64 between reductions
        acc %= q
        yield acc.reshape(n * m, w2).T


def _feed_echelon(sups, basis_q, n, d, q, memory_cap, ech=None, early_stop=True):
    """Stream candidate rows into a mod-q echelon.  With early_stop, quit
    once the rank has stalled for 2*n_cand consecutive rows (the check
    step catches under-constraint).  Returns (echelon, exhausted)."""
    n_cand = n * basis_q.shape[0]
    if ech is None:
        ech = ModpEchelon(n_cand, q)
    stall_limit = max(2 * n_cand, 256)
    since_growth = 0
    for block in _m_blocks_modq(sups, basis_q, n, d, q, memory_cap):
        for i in range(block.shape[0]):
            if ech.memory_bytes() > memory_cap:
                raise ResourceLimitError("echelon over the memory cap")
            if ech.add_row(block[i]):
                since_growth = 0
            else:
                since_growth += 1
            if ech.is_full_rank():
                return ech, True
            if early_stop and since_growth >= stall_limit:
                return ech, False
    return ech, True


def _cand_rref(ech):
    """Canonical RREF basis (rows, pivot tuple) of the echelon's mod-q
    nullspace, in candidate coordinates."""
    null = ech.nullspace()
    ech2 = ModpEchelon(ech.n_cols, ech.p)
    for i in range(null.shape[0]):
        ech2.add_row(null[i])
    rows, piv = ech2.rref()
    return np.array(rows, dtype=np.uint64), tuple(piv)


class _Crt:
    """Entrywise CRT accumulator over matching RREF matrices."""

    def __init__(self, pivots):
        self.pivots = pivots
        self.modulus = 1
        self.values = None  # object ndarray

    def add(self, q, rows):
        rows = rows.astype(object)
        if self.values is None:
            self.values = rows
            self.modulus = q
            return
        inv = pow(self.modulus % q, -1, q)
        self.values = self.values + self.modulus * (((rows - self.values) * inv) % q)
        self.modulus *= q


def _try_reconstruct(crt):
    """Rational matrix behind the CRT residues, or None if the modulus is
    still too small for some entry."""
    m_mod = crt.modulus
    out = []
    for row in crt.values:
        fr = []
        for x in row:
            x = int(x)
            if x == 0:
                fr.append(Fraction(0))
                continue
            f = rational_reconstruct(x, m_mod)
            if f is None:
                return None
            fr.append(f)
        out.append(fr)
    return out


def _clear_rows(frac_rows):
    """Primitive integer matrix proportional row-by-row to the rational
    rows; returns (object ndarray, max entry bit length)."""
    cleared = []
    bits = 1
    for row in frac_rows:
        den = 1
        for f in row:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [int(f * den) for f in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            ints = [v // g for v in ints]
        bits = max(bits, max(abs(v).bit_length() for v in ints))
        cleared.append(ints)
    return np.array(cleared, dtype=object), bits


def _verify_product_zero(C_int, c_bits, chain, b_prev_bits, sups, n, d, seed,
                         memory_cap):
    """Exact proof that M C^T = 0 for the full candidate matrix M over
    the exact previous basis: the product is computed mod fresh primes
    until their product exceeds the a-priori bound on its entries."""
    n_cand = C_int.shape[1]
    supp_max = max((len(codes) for _, codes in sups), default=1)
    bound_bits = b_prev_bits + supp_max.bit_length() + c_bits + n_cand.bit_length() + 2
    ct = C_int.T
    got = 0
    i = 0
    while got < bound_bits:
        q = certification_prime(f"{seed}:check:{d}:{i}")
        i += 1
        basis_q = _chain_basis_modq(chain, n, q, d - 1)
        ct_q = _mod_q(ct, q)
        for block in _m_blocks_modq(sups, basis_q, n, d, q, memory_cap):
            if matmul_modp(block, ct_q, q).any():
                return False
        got += q.bit_length() - 1
    return True


def _certified_level(system, n, d, chain, basis_p, b_prev_bits, p, seed,
                     memory_cap, certify):
    """Solve one tower level.  Returns (dim, chain factor C, c_bits,
    rank_p, rows consumed); C is None when dim is 0 or certify is off."""
    sups = generator_supports(system, n, d)
    n_cand = n * basis_p.shape[0]
    ech, exhausted = _feed_echelon(sups, basis_p, n, d, p, memory_cap)
    m = n_cand - ech.rank
    if m == 0:
        # full column rank mod p already proves dimension 0 exactly
        return 0, None, 0, ech.rank, ech.n_rows_consumed
    if not certify:
        return m, None, 0, ech.rank, ech.n_rows_consumed

    for round_ in (0, 1):
        c_p, piv = _cand_rref(ech)
        crt = _Crt(piv)
        crt.add(p, c_p)
        fracs = _try_reconstruct(crt)
        mismatch = False
        hi = 0
        while fracs is None and hi < MAX_CRT_PRIMES:
            q = certification_prime(f"{seed}:crt:{d}:{hi}")
            hi += 1
            if q == p:
                continue
            basis_q = _chain_basis_modq(chain, n, q, d - 1)
            ech_q, _ = _feed_echelon(sups, basis_q, n, d, q, memory_cap,
                                     early_stop=(round_ == 0))
            c_q, piv_q = _cand_rref(ech_q)
            if c_q.shape[0] != m or piv_q != piv:
                mismatch = True
                break
            crt.add(q, c_q)
            fracs = _try_reconstruct(crt)
        if fracs is not None and not mismatch:
            C_int, c_bits = _clear_rows(fracs)
            if _verify_product_zero(C_int, c_bits, chain, b_prev_bits, sups,
                                    n, d, f"{seed}:{p}", memory_cap):
                return m, C_int, c_bits, ech.rank, ech.n_rows_consumed
        if round_ == 0 and not exhausted:
            # the stalled row prefix may have been rank-deficient
            ech, exhausted = _feed_echelon(sups, basis_p, n, d, p, memory_cap,
                                           ech=ech, early_stop=False)
            m = n_cand - ech.rank
            if m == 0:
                return 0, None, 0, ech.rank, ech.n_rows_consumed
        else:
            break
    raise CertificationError(
        f"{system} n={n} d={d} failed to certify with prime {p}"
    )


def _tower(system, n, max_d, seed=0, prime=None, memory_cap=MAX_MEMORY_BYTES,
           top_uncertified=False):
    """Levels 0..max_d of the certified tower.  Retries a level with a
    fresh prime when certification fails; raises after three primes."""
    base = PerpResult(system, n, 0, MODP_CERTIFIED, None, 1, 0, 1, 0)
    levels = [_Level(0, 1, None, 1, 1, base)]
    chain = []
    cur_p = None
    basis_p = np.ones((1, 1), dtype=np.uint64)
    for d in range(1, max_d + 1):
        prev = levels[-1]
        mode = MODP if (top_uncertified and d == max_d) else MODP_CERTIFIED
        t0 = time.monotonic()
        if prev.dim == 0:
            levels.append(_Level(d, 0, None, 0, 0, PerpResult(
                system, n, d, mode, None, n ** d, n ** d, 0,
                int((time.monotonic() - t0) * 1000))))
            continue
        last_err = None
        for retry in range(MAX_LEVEL_RETRIES):
            p_used = (
                check_prime(prime)
                if prime is not None and retry == 0
                else certification_prime(f"{seed}:{d}:{retry}")
            )
            if p_used != cur_p:
                basis_p = _chain_basis_modq(chain, n, p_used, d - 1)
                cur_p = p_used
            try:
                dim, C_int, c_bits, rank_p, consumed = _certified_level(
                    system, n, d, chain, basis_p, prev.b_bits, p_used,
                    f"{seed}:{retry}", memory_cap,
                    certify=(mode == MODP_CERTIFIED),
                )
                last_err = None
                break
            except CertificationError as e:
                last_err = e
        if last_err is not None:
            raise last_err
        ms = int((time.monotonic() - t0) * 1000)
        res = PerpResult(system, n, d, mode, p_used, n ** d, n ** d - dim, dim, ms)
        if dim == 0:
            levels.append(_Level(d, 0, None, 0, 0, res))
            basis_p = np.zeros((0, n ** d), dtype=np.uint64)
            chain.append(np.zeros((0, n * prev.dim), dtype=object))
            continue
        if C_int is None:
            # uncertified top level: dimension bound only, no basis
            levels.append(_Level(d, dim, None, 0, 0, res))
            continue
        b_bits = prev.b_bits + c_bits + (n * prev.dim).bit_length()
        chain.append(C_int)
        basis_p = _word_image_modq(_mod_q(C_int, p_used), basis_p, n, p_used)
        levels.append(_Level(d, dim, C_int, c_bits, b_bits, res))
    return levels


def _expand_chain_exact(levels, n, d):
    """Exact integer word-coordinate basis at level d from the chain
    factors (object arithmetic; meant for moderate sizes)."""
    basis = [[1]]
    width = 1
    for e in range(1, d + 1):
        C = levels[e].chain_factor
        if C is None:
            return []
        prev = len(basis)
        out = []
        for i in range(C.shape[0]):
            row = [0] * (n * width)
            for a in range(n):
                for j in range(prev):
                    c = int(C[i, a * prev + j])
                    if c:
                        base = a * width
                        bj = basis[j]
                        for w in range(width):
                            if bj[w]:
                                row[base + w] += c * bj[w]
            out.append(row)
        basis = out
        width *= n
        if not basis:
            return []
    return basis


# --- caching ------------------------------------------------------------------------


def _cache_dir(explicit=None):
    d = explicit or os.environ.get("NCINV_CACHE_DIR")
    return d


def _cache_path(cache_dir, system, n, d, mode, prime, small_gens):
    tag = f"{system}_n{n}_d{d}_{mode}"
    if prime:
        tag += f"_p{prime}"
    if small_gens:
        tag += "_smallgens"
    return os.path.join(cache_dir, tag + ".json")


def _cache_get(cache_dir, system, n, d, mode, prime, small_gens):
    if not cache_dir:
        return None
    path = _cache_path(cache_dir, system, n, d, mode, prime, small_gens)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        rec = json.load(fh)
    return PerpResult(
        rec["system"], rec["n"], rec["d"], rec["mode"], rec["prime"],
        rec["n_cols"], rec["rank"], rec["perp_dim"], rec["elapsed_ms"],
    )


def _cache_put(cache_dir, result: PerpResult, small_gens, requested_prime):
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(
        cache_dir, result.system, result.n, result.d, result.mode,
        requested_prime, small_gens,
    )
    with open(path, "w") as fh:
        json.dump(result.cache_record(), fh, sort_keys=True)
        fh.write("\n")


# --- public operations ------------------------------------------------------------


def perp_dimension(system, n, d, mode=MODP_CERTIFIED, seed=0, prime=None,
                   small_gens=False, cache_dir=None,
                   memory_cap=MAX_MEMORY_BYTES, max_exact_cols=MAX_EXACT_COLS):
    """Dimension of the degree-d perp, with provenance, as a PerpResult."""
    check_system(system)
    _check_mode(mode)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if system in COMM_SYSTEMS:
        mode = EXACT  # small widths; exact always
    cdir = _cache_dir(cache_dir)
    key_prime = None
    if mode != EXACT:
        key_prime = check_prime(prime) if prime is not None else certification_prime(seed)
    hit = _cache_get(cdir, system, n, d, mode, key_prime, small_gens)
    if hit is not None:
        return hit
    t0 = time.monotonic()
    if d == 0:
        res = PerpResult(system, n, 0, mode, None, 1, 0, 1, 0)
        _cache_put(cdir, res, small_gens, key_prime)
        return res
    if system in COMM_SYSTEMS:
        n_cols = _n_cols(system, n, d)
        ech = ExactEchelon(n_cols)
        for row in _comm_rows(system, n, d, small_gens):
            ech.add_row(row)
            if ech.is_full_rank():
                break
        ms = int((time.monotonic() - t0) * 1000)
        res = PerpResult(system, n, d, EXACT, None, n_cols, ech.rank,
                         n_cols - ech.rank, ms)
        _cache_put(cdir, res, small_gens, None)
        return res
    if mode == EXACT:
        n_cols = n ** d
        if n_cols > max_exact_cols:
            raise ResourceLimitError(
                f"exact mode needs {n_cols} columns, cap is {max_exact_cols}"
            )
        ech = ExactEchelon(n_cols)
        for row in _free_row_codes(system, n, d, small_gens):
            ech.add_row(row)
            if ech.is_full_rank():
                break
        ms = int((time.monotonic() - t0) * 1000)
        res = PerpResult(system, n, d, EXACT, None, n_cols, ech.rank,
                         n_cols - ech.rank, ms)
        _cache_put(cdir, res, small_gens, None)
        return res
    levels = _tower(system, n, d, seed=seed, prime=key_prime,
                    memory_cap=memory_cap, top_uncertified=(mode == MODP))
    for lev in levels[1:]:
        _cache_put(cdir, lev.result, small_gens,
                   key_prime if lev.result.mode != EXACT else None)
    return levels[d].result


def perp_basis(system, n, d, mode=EXACT, seed=0, prime=None,
               small_gens=False, memory_cap=MAX_MEMORY_BYTES,
               max_exact_cols=MAX_EXACT_COLS):
    """Explicit basis of the degree-d perp as polynomials.

    EXACT solves in word/monomial coordinates over the rationals;
    MODP_CERTIFIED returns the tower's exact integer basis.
    """
    check_system(system)
    _check_mode(mode)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        if system in COMM_SYSTEMS:
            return [CommPoly.one(n)]
        return [FreePoly.one(n)]
    if system in COMM_SYSTEMS:
        mons = monomials(n, d)
        ech = ExactEchelon(len(mons))
        for row in _comm_rows(system, n, d, small_gens):
            ech.add_row(row)
            if ech.is_full_rank():
                break
        basis = []
        for vec in ech.nullspace():
            terms = {}
            for c, v in vec.items():
                m = mons[c]
                terms[m] = Fraction(v) / m.factorial_weight()
            basis.append(CommPoly(n, terms))
        return basis
    if mode == EXACT:
        n_cols = n ** d
        if n_cols > max_exact_cols:
            raise ResourceLimitError(
                f"exact mode needs {n_cols} columns, cap is {max_exact_cols}"
            )
        ech = ExactEchelon(n_cols)
        for row in _free_row_codes(system, n, d, small_gens):
            ech.add_row(row)
            if ech.is_full_rank():
                break
        out = []
        for vec in ech.nullspace():
            terms = {int_to_word(c, d, n): v for c, v in vec.items()}
            out.append(FreePoly(n, terms))
        return out
    if mode == MODP:
        raise ValueError("basis extraction needs exact or modp_certified mode")
    levels = _tower(system, n, d, seed=seed,
                    prime=check_prime(prime) if prime is not None else None,
                    memory_cap=memory_cap)
    out = []
    for row in _expand_chain_exact(levels, n, d):
        terms = {int_to_word(c, d, n): v for c, v in enumerate(row) if v}
        out.append(FreePoly(n, terms))
    return out


def hilbert_series(system, n, max_d, mode=MODP_CERTIFIED, seed=0, prime=None,
                   small_gens=False, cache_dir=None,
                   memory_cap=MAX_MEMORY_BYTES, max_exact_cols=MAX_EXACT_COLS):
    """Per-degree perp dimensions 0..max_d with provenance."""
    check_system(system)
    _check_mode(mode)
    if max_d < 0:
        raise ValueError("max_d must be nonnegative")
    if system in COMM_SYSTEMS or mode == EXACT:
        results = [
            perp_dimension(system, n, d, mode=mode, seed=seed, prime=prime,
                           small_gens=small_gens, cache_dir=cache_dir,
                           memory_cap=memory_cap, max_exact_cols=max_exact_cols)
            for d in range(max_d + 1)
        ]
        return HilbertSeries(system, n, tuple(r.perp_dim for r in results),
                             tuple(results))
    cdir = _cache_dir(cache_dir)
    key_prime = check_prime(prime) if prime is not None else certification_prime(seed)
    cached = [
        _cache_get(cdir, system, n, d, MODP_CERTIFIED if (mode != MODP or d < max_d) else MODP,
                   key_prime, small_gens)
        for d in range(max_d + 1)
    ]
    if all(c is not None for c in cached):
        return HilbertSeries(system, n, tuple(r.perp_dim for r in cached),
                             tuple(cached))
    levels = _tower(system, n, max_d, seed=seed, prime=key_prime,
                    memory_cap=memory_cap, top_uncertified=(mode == MODP))
    results = [lev.result for lev in levels]
    for res in results[1:]:
        _cache_put(cdir, res, small_gens, key_prime)
    return HilbertSeries(system, n, tuple(r.perp_dim for r in results),
                         tuple(results))


def certify_modp(system, n, d, prime=None, seed=0, small_gens=False,
                 cache_dir=None, memory_cap=MAX_MEMORY_BYTES):
    """Certified dimension at degree d; falls back to EXACT when the
    mod-p pipeline cannot certify (it raises only if both fail)."""
    check_system(system)
    try:
        return perp_dimension(system, n, d, mode=MODP_CERTIFIED, seed=seed,
                              prime=prime, small_gens=small_gens,
                              cache_dir=cache_dir, memory_cap=memory_cap)
    except CertificationError:
        return perp_dimension(system, n, d, mode=EXACT, seed=seed,
                              small_gens=small_gens, cache_dir=cache_dir)


def is_in_perp(P, system, n) -> bool:
    """Exact membership: P is orthogonal to every ideal row in its degree."""
    check_system(system)
    if system in FREE_SYSTEMS:
        if not isinstance(P, FreePoly):
            raise TypeError("free systems take a FreePoly")
        if P.is_zero():
            return True
        if not P.is_homogeneous():
            raise ValueError("P must be homogeneous")
        d = P.degree()
        if d == 0:
            return True
        from .words import pairing

        for row in ideal_row_stream(system, n, d):
            if pairing(row, P) != 0:
                return False
        return True
    if not isinstance(P, CommPoly):
        raise TypeError("commutative systems take a CommPoly")
    if P.is_zero():
        return True
    if not P.is_homogeneous():
        raise ValueError("P must be homogeneous")
    d = P.degree()
    if d == 0:
        return True
    from .commutative import comm_pairing

    for row in ideal_row_stream(system, n, d):
        if comm_pairing(row, P) != 0:
            return False
    return True


def comm_perp_dimension(system, n, d, small_gens=False) -> int:
    """Perp dimension for the commutative systems (always exact)."""
    if system not in COMM_SYSTEMS:
        raise ValueError("comm_perp_dimension takes sym or qsym")
    return perp_dimension(system, n, d, small_gens=small_gens).perp_dim


def comm_total_dimension(system, n, cutoff=None, small_gens=False) -> int:
    """Sum of perp dimensions through the cutoff degree (default
    n(n-1)/2 + n, enough for the graded pieces to have died off for
    the sizes handled here); trailing zeros are reported, not assumed."""
    if system not in COMM_SYSTEMS:
        raise ValueError("comm_total_dimension takes sym or qsym")
    if cutoff is None:
        cutoff = n * (n - 1) // 2 + n
    return sum(
        perp_dimension(system, n, d, small_gens=small_gens).perp_dim
        for d in range(cutoff + 1)
    )
