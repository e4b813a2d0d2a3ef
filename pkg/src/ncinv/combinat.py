"""Set partitions, set compositions, and quasi-shuffles.

The indexing combinatorics for the monomial-type bases:

  * SetPartition of [k]: unordered disjoint nonempty blocks covering
    {1,...,k}.
  * SetComposition of [d]: an ordered list of disjoint nonempty blocks
    covering {1,...,d}.
  * GenSetComposition: a set composition with a fixed number of parts
    where empty parts are allowed; these are in bijection with words
    (part i is the set of positions holding letter i).
  * ColoredGenSetComposition: a generalized set composition with a +1/-1
    color on every part.  Only the +1 parts take part in alternating
    sums; the -1 parts stay pinned where they are.
  * Composition: a finite sequence of positive integers.

Text forms use dot notation: parts joined by ".", the elements of a part
concatenated ("13.2.4" for ({1,3},{2},{4})).  An empty part prints "0"
and a -1 colored part gets a "-" prefix ("2.-13.4.-0").  Elements above
9 are comma separated inside their part to stay unambiguous.

Enumeration order everywhere is the lexicographic order of restricted
growth strings, so downstream matrices are reproducible bit for bit.
"""

from __future__ import annotations

from collections import Counter

from .words import Word


def _part_text(part) -> str:
    if not part:
        return "0"
    if all(e <= 9 for e in part):
        return "".join(str(e) for e in part)
    return ",".join(str(e) for e in part)


class SetPartition:
    """Unordered partition of {1,...,k}; blocks stored sorted by minimum."""

    __slots__ = ("blocks", "ground")

    def __init__(self, blocks, ground=None):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        if any(not b for b in blocks):
            raise ValueError("empty block in a set partition")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        seen = set()
        for b in blocks:
            if seen & set(b):
                raise ValueError("blocks are not disjoint")
            seen |= set(b)
        if ground is None:
            ground = len(seen)
        if seen != set(range(1, ground + 1)):
            raise ValueError("blocks do not cover 1..%d" % ground)
        self.blocks = blocks
        self.ground = ground

    @property
    def length(self) -> int:
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.blocks == other.blocks
            and self.ground == other.ground
        )

    def __hash__(self):
        return hash((self.blocks, self.ground))

    def __lt__(self, other):
        return self.blocks < other.blocks

    def to_text(self) -> str:
        if not self.blocks:
            return "{}"
        return ".".join(_part_text(b) for b in self.blocks)

    def __repr__(self):
        return "SetPartition(%s)" % self.to_text()


class SetComposition:
    """Ordered list of disjoint nonempty blocks covering {1,...,d}."""

    __slots__ = ("parts", "size")

    def __init__(self, parts):
        parts = tuple(tuple(sorted(p)) for p in parts)
        seen = set()
        for p in parts:
            if not p:
                raise ValueError("empty part in a set composition")
            if seen & set(p):
                raise ValueError("parts are not disjoint")
            seen |= set(p)
        size = len(seen)
        if seen != set(range(1, size + 1)):
            raise ValueError("parts do not cover an initial segment")
        self.parts = parts
        self.size = size

    @property
    def length(self) -> int:
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, SetComposition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def to_text(self) -> str:
        if not self.parts:
            return "{}"
        return ".".join(_part_text(p) for p in self.parts)

    def __repr__(self):
        return "SetComposition(%s)" % self.to_text()


class GenSetComposition:
    """Fixed-length list of disjoint subsets of {1,...,d}, empties allowed,
    whose union is all of {1,...,d}."""

    __slots__ = ("parts", "degree")

    def __init__(self, parts):
        parts = tuple(tuple(sorted(p)) for p in parts)
        seen = set()
        for p in parts:
            if seen & set(p):
                raise ValueError("parts are not disjoint")
            seen |= set(p)
        degree = len(seen)
        if seen != set(range(1, degree + 1)):
            raise ValueError("parts do not cover an initial segment")
        self.parts = parts
        self.degree = degree

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    def is_canonical(self) -> bool:
        """Nonempty parts have increasing minima and all empties trail."""
        mins = []
        seen_empty = False
        for p in self.parts:
            if not p:
                seen_empty = True
            else:
                if seen_empty:
                    return False
                mins.append(p[0])
        return mins == sorted(mins)

    def __eq__(self, other):
        return isinstance(other, GenSetComposition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def to_text(self) -> str:
        if not self.parts:
            return "{}"
        return ".".join(_part_text(p) for p in self.parts)

    def __repr__(self):
        return "GenSetComposition(%s)" % self.to_text()


class ColoredGenSetComposition:
    """A generalized set composition with a +1/-1 color per part."""

    __slots__ = ("parts", "colors", "degree")

    def __init__(self, parts, colors):
        base = GenSetComposition(parts)
        colors = tuple(colors)
        if len(colors) != len(base.parts):
            raise ValueError("one color per part required")
        if any(c not in (1, -1) for c in colors):
            raise ValueError("colors must be +1 or -1")
        self.parts = base.parts
        self.colors = colors
        self.degree = base.degree

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def plus_slots(self):
        return tuple(i for i, c in enumerate(self.colors) if c == 1)

    def __eq__(self, other):
        return (
            isinstance(other, ColoredGenSetComposition)
            and self.parts == other.parts
            and self.colors == other.colors
        )

    def __hash__(self):
        return hash((self.parts, self.colors))

    def to_text(self) -> str:
        if not self.parts:
            return "{}"
        return ".".join(
            ("-" if c == -1 else "") + _part_text(p)
            for p, c in zip(self.parts, self.colors)
        )

    def __repr__(self):
        return "ColoredGenSetComposition(%s)" % self.to_text()


class Composition:
    """A sequence of positive integers; the empty sequence has size 0."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError("parts must be positive integers")
        self.parts = parts

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def to_text(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self):
        return "Composition%s" % (self.to_text(),)


def restricted_growth_strings(k: int):
    """All restricted growth strings of length k in lexicographic order.

    a_1 = 0 and a_{i+1} <= 1 + max(a_1..a_i); these encode set partitions
    (element i goes to block a_i + 1, blocks numbered by first element).
    """
    if k == 0:
        yield ()
        return
    a = [0] * k
    mx = [0] * k  # mx[i] = max(a[0..i])
    while True:
        yield tuple(a)
        i = k - 1
        while i > 0 and a[i] == mx[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        mx[i] = max(mx[i - 1], a[i])
        for j in range(i + 1, k):
            a[j] = 0
            mx[j] = mx[i]


def _blocks_of_rgs(rgs):
    nb = max(rgs) + 1 if rgs else 0
    blocks = [[] for _ in range(nb)]
    for pos, b in enumerate(rgs, start=1):
        blocks[b].append(pos)
    return [tuple(b) for b in blocks]


def enumerate_set_partitions(k: int, n_blocks=None):
    """All set partitions of [k], ordered by their restricted growth
    string.  With n_blocks given, only partitions with that many blocks."""
    out = []
    for rgs in restricted_growth_strings(k):
        blocks = _blocks_of_rgs(rgs)
        if n_blocks is not None and len(blocks) != n_blocks:
            continue
        out.append(SetPartition(blocks, k))
    return out


def enumerate_ordered_gen_comps(d: int, n_parts: int, max_empty: int):
    """Canonical generalized set compositions of [d] with n_parts parts
    and at most max_empty (trailing) empty parts.

    Canonical means: nonempty parts have increasing minima, empty parts
    all trail.  These correspond to set partitions of [d] into n_parts - e
    blocks for e = 0..max_empty; the output walks e upward, partitions in
    restricted-growth-string order within each e.
    """
    out = []
    for e in range(max_empty + 1):
        j = n_parts - e
        if j < 0 or j > d or (d > 0 and j == 0):
            continue
        if d == 0 and j == 0:
            out.append(GenSetComposition(((),) * n_parts))
            continue
        for sp in enumerate_set_partitions(d, n_blocks=j):
            parts = sp.blocks + ((),) * e
            out.append(GenSetComposition(parts))
    return out


def standardize(parts):
    """Relabel the elements of the parts through the unique order
    preserving bijection onto {1,...,m}, keeping the shape (including
    empty parts).  Returns a tuple of tuples."""
    support = sorted(set().union(*[set(p) for p in parts]) if parts else set())
    relabel = {e: i for i, e in enumerate(support, start=1)}
    return tuple(tuple(relabel[e] for e in sorted(p)) for p in parts)


def flip_positions(parts, m: int):
    """Reverse positions: element q becomes m + 1 - q in every part.
    Returns a tuple of tuples, same shape."""
    return tuple(tuple(sorted(m + 1 - q for q in p)) for p in parts)


def quasi_shuffle_compositions(alpha: Composition, beta: Composition) -> Counter:
    """The quasi-shuffle of two compositions, with multiplicities.

    Recursively: the first part comes from alpha, or from beta, or is the
    sum of both first parts; a composition can arise along several
    branches, so the result is a multiset (Counter).
    """
    out = Counter()
    for parts, mult in _qs_comp(alpha.parts, beta.parts).items():
        out[Composition(parts)] += mult
    return out


def _qs_comp(a, b):
    if not a:
        return Counter({b: 1})
    if not b:
        return Counter({a: 1})
    out = Counter()
    for tail, m in _qs_comp(a[1:], b).items():
        out[(a[0],) + tail] += m
    for tail, m in _qs_comp(a, b[1:]).items():
        out[(b[0],) + tail] += m
    for tail, m in _qs_comp(a[1:], b[1:]).items():
        out[(a[0] + b[0],) + tail] += m
    return out


def shift_parts(parts, d: int):
    return tuple(tuple(e + d for e in p) for p in parts)


def quasi_shuffle_setcomps(A: SetComposition, B: SetComposition) -> Counter:
    """Quasi-shuffle of set compositions: B is shifted up by size(A) so
    the supports are disjoint, then the same three-branch recursion runs
    with union in the merge branch.  Every output is a set composition of
    [size(A) + size(B)]; here distinct branches give distinct outputs, so
    all multiplicities are 1, but a Counter is returned for uniformity."""
    out = Counter()
    shifted = shift_parts(B.parts, A.size)
    for parts in _qs_sets(A.parts, shifted):
        out[SetComposition(parts)] += 1
    return out


def _qs_sets(a, b):
    if not a:
        return [b]
    if not b:
        return [a]
    out = []
    for tail in _qs_sets(a[1:], b):
        out.append((a[0],) + tail)
    for tail in _qs_sets(a, b[1:]):
        out.append((b[0],) + tail)
    merged = tuple(sorted(a[0] + b[0]))
    for tail in _qs_sets(a[1:], b[1:]):
        out.append((merged,) + tail)
    return out


def nabla(w: Word) -> SetPartition:
    """The set partition of positions into equal-letter fibers."""
    fibers = {}
    for pos, a in enumerate(w.letters, start=1):
        fibers.setdefault(a, []).append(pos)
    return SetPartition(fibers.values(), w.degree)


def nabla_tilde(w: Word) -> SetComposition:
    """The fibers of w in increasing variable order, empties dropped."""
    fibers = {}
    for pos, a in enumerate(w.letters, start=1):
        fibers.setdefault(a, []).append(pos)
    return SetComposition([fibers[a] for a in sorted(fibers)])


def word_of_gencomp(A: GenSetComposition) -> Word:
    """The word whose position p holds letter i when p is in part i; the
    alphabet size is the number of parts."""
    n = A.n_parts
    letters = [0] * A.degree
    for i, part in enumerate(A.parts, start=1):
        for p in part:
            letters[p - 1] = i
    return Word(letters, n)


def gencomp_of_word(w: Word) -> GenSetComposition:
    """Inverse of word_of_gencomp: part i is the fiber of letter i,
    empty parts included, one part per alphabet letter."""
    parts = [[] for _ in range(w.n)]
    for pos, a in enumerate(w.letters, start=1):
        parts[a - 1].append(pos)
    return GenSetComposition(parts)
