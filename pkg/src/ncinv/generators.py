"""Generating sets of the four ideals, expanded into n variables.

Four systems share one interface:

  * ncsym   - one generator per set partition of [k]: the sum of all
              degree-k words whose equal-letter fibers realize the
              partition (zero once the partition has more blocks than
              there are variables).
  * ncqsym  - one generator per set composition of [d]: the sum of all
              words whose fibers, read in increasing variable order, are
              the parts in order.
  * sym     - power sums p_k.
  * qsym    - monomial quasi-symmetric sums indexed by compositions.

ideal_row_stream emits a spanning set of the degree-d component of the
two-sided ideal: every u * g * v with g a generator of degree k <= d and
u, v words making up the remaining degree (for the commutative systems,
every m * g with m a monomial).  Streams are lazy and deterministically
ordered; generators that expand to zero are skipped.

For the heavy mod-p paths there is also an index-level surface,
generator_supports, describing each free generator by the integer codes
of its words (all coefficients are 1 there).
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .combinat import (
    Composition,
    SetComposition,
    SetPartition,
    enumerate_set_partitions,
)
from .commutative import CommMonomial, CommPoly, monomials
from .words import FreePoly, Word, word_to_int

NCSYM = "ncsym"
NCQSYM = "ncqsym"
SYM = "sym"
QSYM = "qsym"

FREE_SYSTEMS = (NCSYM, NCQSYM)
COMM_SYSTEMS = (SYM, QSYM)
ALL_SYSTEMS = FREE_SYSTEMS + COMM_SYSTEMS


def check_system(system: str) -> str:
    if system not in ALL_SYSTEMS:
        raise ValueError("unknown system %r; expected one of %s" % (system, ALL_SYSTEMS))
    return system


def m_phi(phi: SetPartition, n: int) -> FreePoly:
    """Sum of the degree-k words over n variables whose fiber partition
    is phi: one word per injection of the blocks into the variables.
    Zero when there are more blocks than variables; the empty partition
    gives the unit."""
    blocks = phi.blocks
    k = phi.ground
    terms = {}
    for img in permutations(range(1, n + 1), len(blocks)):
        letters = [0] * k
        for b, a in zip(blocks, img):
            for pos in b:
                letters[pos - 1] = a
        terms[Word(letters, n)] = 1
    return FreePoly(n, terms)


def mcal_a(A: SetComposition, n: int) -> FreePoly:
    """Sum of the words over n variables whose nonempty fibers, in
    increasing variable order, are exactly the parts of A in order: one
    word per strictly increasing choice of variables."""
    parts = A.parts
    d = A.size
    terms = {}
    for img in combinations(range(1, n + 1), len(parts)):
        letters = [0] * d
        for p, a in zip(parts, img):
            for pos in p:
                letters[pos - 1] = a
        terms[Word(letters, n)] = 1
    return FreePoly(n, terms)


def p_k(k: int, n: int) -> CommPoly:
    """Power sum: x_1^k + ... + x_n^k."""
    if k < 1:
        raise ValueError("power sums start at k = 1")
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[CommMonomial(e)] = 1
    return CommPoly(n, terms)


def m_alpha(alpha: Composition, n: int) -> CommPoly:
    """Monomial quasi-symmetric sum truncated to n variables: one term
    x_{i_1}^{a_1} ... x_{i_k}^{a_k} per increasing choice of variables.
    Zero when alpha has more parts than there are variables."""
    parts = alpha.parts
    terms = {}
    for img in combinations(range(n), len(parts)):
        e = [0] * n
        for a, i in zip(parts, img):
            e[i] = a
        terms[CommMonomial(e)] = 1
    return CommPoly(n, terms)


def compositions_of(k: int):
    """All compositions of k, in lexicographic order of their part lists."""
    if k == 0:
        return [Composition(())]
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(Composition(prefix))
            return
        for first in range(1, remaining + 1):
            rec(remaining - first, prefix + (first,))

    rec(k, ())
    return out


def set_compositions_of(k: int, max_parts=None):
    """All set compositions of [k]: each set partition in enumeration
    order, each ordering of its blocks in lexicographic order."""
    out = []
    for sp in enumerate_set_partitions(k):
        if max_parts is not None and sp.length > max_parts:
            continue
        for order in permutations(range(sp.length)):
            out.append(SetComposition([sp.blocks[i] for i in order]))
    return out


def generator_list(system: str, n: int, max_k: int):
    """Nonzero generators of degree 1..max_k as (k, polynomial) pairs,
    in the deterministic emission order of ideal_row_stream."""
    check_system(system)
    out = []
    for k in range(1, max_k + 1):
        if system == NCSYM:
            for phi in enumerate_set_partitions(k):
                if phi.length <= n:
                    out.append((k, m_phi(phi, n)))
        elif system == NCQSYM:
            for A in set_compositions_of(k, max_parts=n):
                out.append((k, mcal_a(A, n)))
        elif system == SYM:
            out.append((k, p_k(k, n)))
        else:
            for alpha in compositions_of(k):
                if alpha.length <= n:
                    out.append((k, m_alpha(alpha, n)))
    return out


def all_words(n: int, d: int):
    """The degree-d words over n variables in code (lexicographic) order."""
    return [Word(ls, n) for ls in product(range(1, n + 1), repeat=d)]


def ideal_row_stream(system: str, n: int, d: int, small_gens: bool = False):
    """Lazily yield homogeneous degree-d polynomials spanning the
    degree-d component of the ideal.

    Free systems: u * g * v over all generators g of degree k <= d and
    all splits of the remaining degree.  Commutative systems: m * g over
    all monomials m of complementary degree.

    small_gens applies to sym only: use p_1..p_n instead of p_1..p_d
    (the same ideal, fewer generators).
    """
    check_system(system)
    if d < 1:
        raise ValueError("rows exist only in positive degree")
    max_k = min(d, n) if (system == SYM and small_gens) else d
    gens = generator_list(system, n, max_k)
    if system in FREE_SYSTEMS:
        for k, g in gens:
            for du in range(d - k + 1):
                dv = d - k - du
                for u in all_words(n, du):
                    ug = multiply_word_poly(u, g)
                    for v in all_words(n, dv):
                        yield multiply_poly_word(ug, v)
    else:
        for k, g in gens:
            for m in monomials(n, d - k):
                yield g * CommPoly(n, {m: 1})


def multiply_word_poly(u: Word, g: FreePoly) -> FreePoly:
    out = FreePoly(g.n)
    out.terms = {Word(u.letters + w.letters, g.n): c for w, c in g.terms.items()}
    return out


def multiply_poly_word(g: FreePoly, v: Word) -> FreePoly:
    out = FreePoly(g.n)
    out.terms = {Word(w.letters + v.letters, g.n): c for w, c in g.terms.items()}
    return out


def generator_supports(system: str, n: int, max_k: int):
    """Index-level view of the free-system generators: (k, codes) pairs
    where codes lists word_to_int of every word of the generator (all
    coefficients are 1).  Same order as generator_list."""
    if system not in FREE_SYSTEMS:
        raise ValueError("index-level supports exist for the free systems only")
    out = []
    for k, g in generator_list(system, n, max_k):
        codes = sorted(word_to_int(w) for w in g.terms)
        out.append((k, codes))
    return out
