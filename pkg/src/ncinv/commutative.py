"""Commutative polynomial engine and the bridges to the free algebra.

Monomials are exponent vectors over n variables.  The pairing here is
the differential one: <Q, P> is the constant term of Q(d/dx) applied to
P, which on monomials is diagonal with weight alpha! (the product of the
factorials of the exponents).

Two linear maps connect this ring with the free algebra:

  * chi flattens a word to its exponent vector (letters commute); it is
    an algebra homomorphism.
  * psi sends a monomial x^alpha of degree k to the sum over all k!
    position permutations of a word flattening to x^alpha; each distinct
    word therefore appears with multiplicity alpha!.  psi is linear but
    not multiplicative.

The two pairings match across the bridge:
pairing(f, psi(P)) == comm_pairing(chi(f), P), which is exercised as a
cross-engine property check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .words import FreePoly, Word


class CommMonomial:
    """Exponent vector over n commuting variables."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise ValueError("negative exponent")
        self.exponents = exponents

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def factorial_weight(self) -> int:
        """alpha! = product of the factorials of the exponents."""
        out = 1
        for e in self.exponents:
            out *= factorial(e)
        return out

    def __eq__(self, other):
        return isinstance(other, CommMonomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __lt__(self, other):
        return (self.degree, self.exponents) < (other.degree, other.exponents)

    def __mul__(self, other):
        if isinstance(other, CommMonomial):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return CommMonomial(
                tuple(a + b for a, b in zip(self.exponents, other.exponents))
            )
        return NotImplemented

    def to_text(self) -> str:
        pieces = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                pieces.append("x%d" % i)
            elif e > 1:
                pieces.append("x%d^%d" % (i, e))
        return "*".join(pieces) if pieces else "1"

    def __repr__(self):
        return "CommMonomial(%s)" % self.to_text()


def monomials(n: int, d: int):
    """All exponent vectors over n variables of total degree d, in
    ascending lexicographic order.  This fixes the column order of every
    commutative matrix."""
    if n == 0:
        return [CommMonomial(())] if d == 0 else []
    out = []
    for e1 in range(d + 1):
        for rest in monomials(n - 1, d - e1):
            out.append(CommMonomial((e1,) + rest.exponents))
    return out


class CommPoly:
    """Sparse rational polynomial in n commuting variables."""

    __slots__ = ("terms", "n")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for m, c in items:
                if m.n != n:
                    raise ValueError("variable count mismatch in terms")
                c = Fraction(c)
                if c:
                    c = clean.get(m, Fraction(0)) + c
                    if c:
                        clean[m] = c
                    else:
                        del clean[m]
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {CommMonomial((0,) * n): 1})

    @classmethod
    def variable(cls, i, n):
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {CommMonomial(e): 1})

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        return len({m.degree for m in self.terms}) <= 1

    def degree(self):
        if not self.terms:
            return None
        return max(m.degree for m in self.terms)

    def homogeneous_component(self, d):
        return CommPoly(self.n, {m: c for m, c in self.terms.items() if m.degree == d})

    def coeff(self, m) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, CommPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __add__(self, other):
        if not isinstance(other, CommPoly):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = CommPoly(self.n)
        p.terms = out
        return p

    def __neg__(self):
        p = CommPoly(self.n)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CommPoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 * m2
                    s = out.get(m, Fraction(0)) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
            p = CommPoly(self.n)
            p.terms = out
            return p
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Fraction(c)
        p = CommPoly(self.n)
        if c:
            p.terms = {m: cm * c for m, cm in self.terms.items()}
        return p

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: it[0])

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            if c < 0:
                sign = " - " if pieces else "-"
                c = -c
            else:
                sign = " + " if pieces else ""
            if c == 1 and m.degree > 0:
                body = m.to_text()
            elif m.degree == 0:
                body = str(c)
            else:
                body = "%s*%s" % (c, m.to_text())
            pieces.append(sign + body)
        return "".join(pieces)

    def __repr__(self):
        return "CommPoly(%s)" % self.to_text()


def comm_pairing(Q: CommPoly, P: CommPoly) -> Fraction:
    """The differential pairing: sum over monomials of Q_a * P_a * a!.

    Closed form of "apply Q(d/dx) to P and take the constant term";
    symmetric, and zero across different degrees.
    """
    if Q.n != P.n:
        raise ValueError("variable count mismatch")
    small, large = Q.terms, P.terms
    if len(large) < len(small):
        small, large = large, small
    total = Fraction(0)
    for m, c in small.items():
        other = large.get(m)
        if other is not None:
            total += c * other * m.factorial_weight()
    return total


def partial(i: int, P: CommPoly) -> CommPoly:
    """Partial derivative with respect to x_i."""
    out = {}
    for m, c in P.terms.items():
        e = m.exponents[i - 1]
        if e:
            ne = list(m.exponents)
            ne[i - 1] = e - 1
            nm = CommMonomial(ne)
            out[nm] = out.get(nm, Fraction(0)) + c * e
    p = CommPoly(P.n)
    p.terms = {m: c for m, c in out.items() if c}
    return p


def apply_diff(Q: CommPoly, P: CommPoly) -> CommPoly:
    """Q(d/dx) applied to P, term by term.  Brute-force companion used to
    cross-check the closed form of comm_pairing."""
    if Q.n != P.n:
        raise ValueError("variable count mismatch")
    total = CommPoly(P.n)
    for m, c in Q.terms.items():
        piece = P
        for i, e in enumerate(m.exponents, start=1):
            for _ in range(e):
                piece = partial(i, piece)
        total = total + piece.scale(c)
    return total


def chi(f: FreePoly) -> CommPoly:
    """Let the letters commute: a word becomes its exponent vector."""
    out = {}
    n = f.n
    for w, c in f.terms.items():
        e = [0] * n
        for a in w.letters:
            e[a - 1] += 1
        m = CommMonomial(e)
        out[m] = out.get(m, Fraction(0)) + c
    p = CommPoly(n)
    p.terms = {m: c for m, c in out.items() if c}
    return p


def psi(P: CommPoly) -> FreePoly:
    """Sum over all position permutations of a word flattening to each
    monomial; each distinct word carries multiplicity alpha!."""
    n = P.n
    out = {}
    for m, c in P.terms.items():
        letters = []
        for i, e in enumerate(m.exponents, start=1):
            letters.extend([i] * e)
        for arrangement in permutations(letters):
            w = Word(arrangement, n)
            out[w] = out.get(w, Fraction(0)) + c
    p = FreePoly(n)
    p.terms = {w: c for w, c in out.items() if c}
    return p


def bridge_identity_check(f: FreePoly, P: CommPoly) -> bool:
    """The two pairings agree across the bridge: pairing f against
    psi(P) in the word basis equals the differential pairing of chi(f)
    against P.  Both sides are computed by independent engines."""
    from .words import pairing

    return pairing(f, psi(P)) == comm_pairing(chi(f), P)


def vandermonde(n: int) -> CommPoly:
    """The product of (x_i - x_j) over i < j, expanded."""
    out = CommPoly.one(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (CommPoly.variable(i, n) - CommPoly.variable(j, n))
    return out


def vandermonde_closure(n: int) -> list:
    """All nonzero iterated partial derivatives of the Vandermonde
    product (including itself), deduplicated.  Spans the same space as
    every P(d/dx) applied to it.  Keep n <= 4."""
    if n > 4:
        raise ValueError("closure is enumerated naively; keep n <= 4")
    seen = {}
    frontier = [vandermonde(n)]
    while frontier:
        nxt = []
        for p in frontier:
            key = tuple(sorted((m.exponents, c) for m, c in p.terms.items()))
            if key in seen:
                continue
            seen[key] = p
            for i in range(1, n + 1):
                dp = partial(i, p)
                if not dp.is_zero():
                    nxt.append(dp)
        frontier = nxt
    return list(seen.values())


def a_alpha(exponents, n: int) -> CommPoly:
    """The alternant: sum over sigma in S_n of sign(sigma) times the
    monomial with exponents permuted by sigma.  Zero whenever two
    exponents coincide."""
    exponents = tuple(exponents)
    if len(exponents) != n:
        raise ValueError("need one exponent per variable")
    out = {}
    for sigma in permutations(range(n)):
        beta = [0] * n
        for i in range(n):
            beta[sigma[i]] = exponents[i]
        m = CommMonomial(beta)
        out[m] = out.get(m, Fraction(0)) + _sign(sigma)
    p = CommPoly(n)
    p.terms = {m: c for m, c in out.items() if c}
    return p


def staircase(n: int):
    """The exponent vector (n-1, n-2, ..., 1, 0)."""
    return tuple(range(n - 1, -1, -1))


def _sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1
