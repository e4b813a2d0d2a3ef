"""Free associative algebra over the rationals.

Monomials are words over the alphabet {1, ..., n}: finite sequences of
variable indices, multiplied by concatenation.  A polynomial is a finite
rational linear combination of words, stored sparsely as a map from Word
to Fraction.

Differential structure: for a letter a, the operator d_letter(a, .)
strips a leading x_a from every word (words starting with another letter,
and constants, are killed).  d_word(u, .) composes these left to right,
so it strips the prefix u.  Stripping a prefix is adjoint to multiplying
on the left:

    pairing(u * f, P) == pairing(f, d_word(u, P))

where pairing is the coefficient dot product in the word basis.

Words are kept in a fixed total order (degree first, then left-to-right
letter comparison) so that text output and matrix column indexing are
deterministic.  Under the base-n encoding of word_to_int this order is
just (degree, integer code).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


class Word:
    """A monomial: an immutable sequence of letters in {1, ..., n}.

    The empty sequence is the unit monomial of degree 0.
    """

    __slots__ = ("letters", "n")

    def __init__(self, letters, n: int):
        letters = tuple(letters)
        for a in letters:
            if not 1 <= a <= n:
                raise ValueError("letter %r outside alphabet 1..%d" % (a, n))
        self.letters = letters
        self.n = n

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.letters == other.letters
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.letters, self.n))

    def __lt__(self, other):
        return (len(self.letters), self.letters) < (
            len(other.letters),
            other.letters,
        )

    def __mul__(self, other):
        if isinstance(other, Word):
            if other.n != self.n:
                raise ValueError("alphabet size mismatch")
            return Word(self.letters + other.letters, self.n)
        return NotImplemented

    def to_text(self) -> str:
        if not self.letters:
            return "1"
        return "*".join("x%d" % a for a in self.letters)

    def __repr__(self):
        return "Word(%s, n=%d)" % (self.to_text(), self.n)


def word_to_int(w: Word) -> int:
    """Base-n code of a word, big endian: the first letter is the most
    significant digit.  Within a fixed degree this is the lexicographic
    rank, and code(u*v) = code(u) * n**deg(v) + code(v)."""
    code = 0
    for a in w.letters:
        code = code * w.n + (a - 1)
    return code


def int_to_word(code: int, degree: int, n: int) -> Word:
    letters = []
    for _ in range(degree):
        code, r = divmod(code, n)
        letters.append(r + 1)
    letters.reverse()
    return Word(letters, n)


class FreePoly:
    """Sparse rational polynomial in non-commuting variables.

    terms maps Word -> nonzero Fraction.  Instances are treated as
    immutable: no operation mutates its inputs.
    """

    __slots__ = ("terms", "n")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for w, c in items:
                if w.n != n:
                    raise ValueError("alphabet size mismatch in terms")
                c = Fraction(c)
                if c:
                    c = clean.get(w, Fraction(0)) + c
                    if c:
                        clean[w] = c
                    else:
                        del clean[w]
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {Word((), n): 1})

    @classmethod
    def from_word(cls, w: Word, coeff=1):
        return cls(w.n, {w: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {w.degree for w in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Top degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(w.degree for w in self.terms)

    def homogeneous_component(self, d: int) -> "FreePoly":
        return FreePoly(
            self.n, {w: c for w, c in self.terms.items() if w.degree == d}
        )

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(Word((), self.n), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, FreePoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("alphabet size mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        p = FreePoly(self.n)
        p.terms = out
        return p

    def __neg__(self):
        p = FreePoly(self.n)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreePoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "FreePoly":
        c = Fraction(c)
        p = FreePoly(self.n)
        if c:
            p.terms = {w: cw * c for w, cw in self.terms.items()}
        return p

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: it[0])

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            if c < 0:
                sign = " - " if pieces else "-"
                c = -c
            else:
                sign = " + " if pieces else ""
            if c == 1 and w.letters:
                body = w.to_text()
            elif not w.letters:
                body = str(c)
            else:
                body = "%s*%s" % (c, w.to_text())
            pieces.append(sign + body)
        return "".join(pieces)

    def __repr__(self):
        return "FreePoly(%s)" % self.to_text()


class Permutation:
    """A permutation of [m] in one-line notation (1-based images)."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a bijection on [m]: %r" % (images,))
        self.images = images

    @property
    def size(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @property
    def sign(self) -> int:
        inv = 0
        im = self.images
        for i in range(len(im)):
            for j in range(i + 1, len(im)):
                if im[i] > im[j]:
                    inv += 1
        return -1 if inv % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)


def all_permutations(m: int):
    """All permutations of [m], lexicographic on one-line notation."""
    return [Permutation(p) for p in permutations(range(1, m + 1))]


def multiply(f: FreePoly, g: FreePoly) -> FreePoly:
    """Concatenation product, extended bilinearly."""
    if f.n != g.n:
        raise ValueError("alphabet size mismatch")
    out = {}
    for u, cu in f.terms.items():
        for v, cv in g.terms.items():
            w = Word(u.letters + v.letters, f.n)
            s = out.get(w, Fraction(0)) + cu * cv
            if s:
                out[w] = s
            else:
                del out[w]
    p = FreePoly(f.n)
    p.terms = out
    return p


def d_letter(a: int, f: FreePoly) -> FreePoly:
    """Strip a leading x_a from every word of f; drop everything else."""
    if not 1 <= a <= f.n:
        raise ValueError("letter %r outside alphabet 1..%d" % (a, f.n))
    out = {}
    for w, c in f.terms.items():
        if w.letters and w.letters[0] == a:
            out[Word(w.letters[1:], f.n)] = c
    p = FreePoly(f.n)
    p.terms = out
    return p


def d_word(u: Word, f: FreePoly) -> FreePoly:
    """Strip the prefix u: the word u*v maps to v, everything else to 0.

    Equals d_letter(u_1, .) applied first, then d_letter(u_2, .), and so
    on left to right.
    """
    if u.n != f.n:
        raise ValueError("alphabet size mismatch")
    k = u.degree
    out = {}
    for w, c in f.terms.items():
        if w.degree >= k and w.letters[:k] == u.letters:
            out[Word(w.letters[k:], f.n)] = c
    p = FreePoly(f.n)
    p.terms = out
    return p


def reverse(u: Word) -> Word:
    return Word(u.letters[::-1], u.n)


def reverse_poly(f: FreePoly) -> FreePoly:
    """Reverse every word of f."""
    p = FreePoly(f.n)
    p.terms = {reverse(w): c for w, c in f.terms.items()}
    return p


def apply_reversed(f: FreePoly, P: FreePoly) -> FreePoly:
    """The operator sum(c_w * d_word(reverse(w), .)) applied to P."""
    if f.n != P.n:
        raise ValueError("alphabet size mismatch")
    out = FreePoly(f.n)
    for w, c in f.terms.items():
        out = out + d_word(reverse(w), P).scale(c)
    return out


def pairing(f: FreePoly, P: FreePoly) -> Fraction:
    """Coefficient dot product sum(f_w * P_w).  Symmetric and graded:
    words of different degree contribute nothing.

    Equivalently the constant term of apply_reversed(reverse_poly(f), P).
    """
    if f.n != P.n:
        raise ValueError("alphabet size mismatch")
    small, large = f.terms, P.terms
    if len(large) < len(small):
        small, large = large, small
    total = Fraction(0)
    for w, c in small.items():
        other = large.get(w)
        if other is not None:
            total += c * other
    return total


def sigma_act(sigma: Permutation, f: FreePoly) -> FreePoly:
    """Relabel every letter through sigma: an algebra automorphism."""
    if sigma.size != f.n:
        raise ValueError("permutation acts on [%d], alphabet is [%d]" % (sigma.size, f.n))
    im = sigma.images
    out = {}
    for w, c in f.terms.items():
        nw = Word(tuple(im[a - 1] for a in w.letters), f.n)
        out[nw] = out.get(nw, Fraction(0)) + c
    p = FreePoly(f.n)
    p.terms = {w: c for w, c in out.items() if c}
    return p


def pi_act(u: Word, pi: Permutation) -> Word:
    """Permute positions: the result has letter u_{pi(t)} at position t."""
    if pi.size != u.degree:
        raise ValueError("permutation size %d != word degree %d" % (pi.size, u.degree))
    return Word(tuple(u.letters[pi(t) - 1] for t in range(1, pi.size + 1)), u.n)


def delta_w(w: Word, n: int) -> FreePoly:
    """Sum over all sigma in S_n and pi in S_k of sign(sigma) times
    sigma AppliedTo (w composed with pi).

    The output changes by sign(sigma) under sigma_act.  Enumeration is
    the full n! * k! double sum; keep k <= 6 and n <= 5.
    """
    if w.n != n:
        w = Word(w.letters, n)
    k = w.degree
    out = {}
    for sigma in permutations(range(1, n + 1)):
        sgn = _perm_sign(sigma)
        for pi in permutations(range(k)):
            letters = tuple(sigma[w.letters[t] - 1] for t in pi)
            nw = Word(letters, n)
            out[nw] = out.get(nw, 0) + sgn
    p = FreePoly(n)
    p.terms = {w2: Fraction(c) for w2, c in out.items() if c}
    return p


def _perm_sign(images) -> int:
    inv = 0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i] > images[j]:
                inv += 1
    return -1 if inv % 2 else 1
