"""Alternating elements and their intersection with the perp space.

A generalized set composition Phi of [d] with n parts encodes the word
holding letter i on the positions of part i; summing the words of all n!
letter rearrangements with the permutation sign gives an alternating
element, and over canonical Phi these sums form a basis of the
sign-alternating subspace in degree d.  This module computes the
dimension of (perp space of the symmetric system) intersected with that
subspace without expanding anything into word coordinates: a two-stage
deletion rule evaluates each row-functional of the ideal on a basis
element, producing a sign and a two-colored composition, and the
resulting sparse system over the basis is solved for its nullspace.

Two-colored compositions describe partially collapsed alternating sums:
parts colored +1 still alternate among themselves, parts colored -1 are
pinned to the letter of their slot.  Everything here is validated
against a brute-force word-level oracle on small cases.
"""

import math
from fractions import Fraction
from itertools import permutations

import numpy as np

from .combinat import (
    ColoredGenSetComposition,
    GenSetComposition,
    SetPartition,
    enumerate_ordered_gen_comps,
    flip_positions,
)
from .generators import ideal_row_stream
from .linalg import ExactEchelon, ModpEchelon, exact_nullspace, matmul_modp
from .modular import certification_prime, check_prime, rational_reconstruct
from .perp import (
    EXACT,
    MAX_LEVEL_RETRIES,
    MODP,
    MODP_CERTIFIED,
    CertificationError,
    SparseRowMatrix,
    _check_mode,
    rank,
)
from .words import FreePoly, Word, all_permutations, pairing


def _parity(seq):
    """Sign of a permutation given as a sequence of distinct comparables."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def alt_basis(n: int, d: int):
    """Canonical generalized set compositions of [d] with n parts and at
    most one trailing empty part; their alternating expansions span the
    alternating subspace in degree d."""
    return enumerate_ordered_gen_comps(d, n, max_empty=1)


def canonicalize(A: GenSetComposition):
    """Sort the parts into canonical order (increasing minima, empties
    trailing), tracking the sign of the rearrangement.

    Returns (0, None) when two or more parts are empty, since the
    alternating sum then cancels; otherwise (sign, sorted form).
    """
    parts = A.parts
    if sum(1 for p in parts if not p) >= 2:
        return 0, None
    order = sorted(
        range(len(parts)),
        key=lambda i: (0, parts[i][0]) if parts[i] else (1,),
    )
    return _parity(order), GenSetComposition(parts[i] for i in order)


def expand_alt(phi: GenSetComposition) -> FreePoly:
    """Alternating word sum of phi over all letter rearrangements.

    The word of a rearrangement sigma holds letter sigma(i) on the
    positions of part i and contributes with sign(sigma).  This is the
    brute-force oracle for the rest of the module; rearrangements that
    agree on the nonempty parts produce the same word, so a composition
    with two or more empty parts expands to zero.
    """
    n = phi.n_parts
    d = phi.degree
    acc = {}
    for sigma in all_permutations(n):
        letters = [0] * d
        for i, part in enumerate(phi.parts):
            a = sigma(i + 1)
            for p in part:
                letters[p - 1] = a
        w = Word(letters, n)
        acc[w] = acc.get(w, 0) + sigma.sign
    return FreePoly(n, {w: Fraction(c) for w, c in acc.items() if c})


def expand_colored(theta: ColoredGenSetComposition, n=None) -> FreePoly:
    """Alternating word sum over rearrangements of the +1 slots only;
    each -1 part is pinned to the letter of its own slot.

    The alphabet size defaults to the part count and only needs to be
    passed for the empty composition, which expands to the constant 1.
    """
    if n is None:
        n = theta.n_parts
    if theta.n_parts == 0:
        if n < 1:
            raise ValueError("alphabet size needed for the empty composition")
        return FreePoly.one(n)
    d = theta.degree
    plus = [i for i, c in enumerate(theta.colors) if c == 1]
    acc = {}
    for images in permutations(plus):
        letter = list(range(1, theta.n_parts + 1))
        for slot, img in zip(plus, images):
            letter[slot] = img + 1
        letters = [0] * d
        for i, part in enumerate(theta.parts):
            for p in part:
                letters[p - 1] = letter[i]
        w = Word(letters, n)
        acc[w] = acc.get(w, 0) + _parity(images)
    return FreePoly(n, {w: Fraction(c) for w, c in acc.items() if c})


def canonicalize_colored(theta: ColoredGenSetComposition):
    """Canonical form of a colored composition, with sign.

    The +1 parts are sorted by minimum among the +1 slots (an empty +1
    part sorts first), the -1 parts stay pinned.  Two or more empty +1
    parts give (0, None); a degree-0 survivor collapses to the empty
    composition, which stands for the constant 1.
    """
    parts, colors = theta.parts, theta.colors
    plus = [i for i, c in enumerate(colors) if c == 1]
    if sum(1 for i in plus if not parts[i]) >= 2:
        return 0, None
    if theta.degree == 0:
        return 1, ColoredGenSetComposition((), ())
    order = sorted(
        range(len(plus)),
        key=lambda j: (1, parts[plus[j]][0]) if parts[plus[j]] else (0,),
    )
    new_parts = list(parts)
    for slot, j in zip(plus, order):
        new_parts[slot] = parts[plus[j]]
    return _parity(order), ColoredGenSetComposition(new_parts, colors)


def _stage1(A, phi):
    """Delete A's positions from phi, matching parts through the flip.

    The row-functional strips reversed-A as a prefix, so position q of
    the prefix sits opposite position l+1-q of A.  Each nonempty flipped
    part of A must equal the trace of exactly one part of phi on [l];
    unmatched parts are assigned to the unmatched slots in ascending
    order and the sign of the whole slot assignment is returned together
    with the stripped parts (in slot order) and the colors, -1 on the
    slots A hit.  None when the matching fails.
    """
    n = phi.n_parts
    ell = A.degree
    hit = flip_positions(A.parts, ell)
    traces = []
    tails = []
    for part in phi.parts:
        traces.append(tuple(q for q in part if q <= ell))
        tails.append(tuple(q - ell for q in part if q > ell))
    where = {t: i for i, t in enumerate(traces) if t}
    assign = [None] * n
    taken = 0
    for j, h in enumerate(hit):
        if not h:
            continue
        i = where.get(h)
        if i is None:
            return None
        assign[i] = j
        taken += 1
    if taken != len(where):
        return None
    free_parts = [i for i in range(n) if assign[i] is None]
    free_slots = [j for j in range(n) if not hit[j]]
    for i, j in zip(free_parts, free_slots):
        assign[i] = j
    parts = [None] * n
    for i in range(n):
        parts[assign[i]] = tails[i]
    colors = tuple(-1 if a else 1 for a in A.parts)
    return _parity(assign), tuple(parts), colors


def _stage2(psi, parts):
    """Delete psi's blocks from the parts, again through the flip.

    The nonempty traces of the parts on [k] must coincide, as a set
    system, with the flipped blocks of psi; the stripped parts keep
    their slots and colors and no sign is picked up, because the sum
    over letter injections absorbs the slot matching.  None when the
    matching fails.
    """
    k = psi.ground
    want = set(flip_positions(psi.blocks, k))
    traces = []
    tails = []
    for part in parts:
        traces.append(tuple(q for q in part if q <= k))
        tails.append(tuple(q - k for q in part if q > k))
    got = [t for t in traces if t]
    if len(got) != len(want) or set(got) != want:
        return None
    return tuple(tails)


def act(psi: SetPartition, A: GenSetComposition, phi: GenSetComposition):
    """Evaluate one row-functional on one alternating basis element.

    The functional is indexed by a set partition psi of [k] (the letter
    pattern of a symmetric generator) and a generalized set composition
    A of [l] (the deleted prefix); phi has degree d with k + l <= d.
    Returns None when the result vanishes, else (sign, theta) with theta
    a canonical colored composition of [d-l-k]: the functional sends the
    alternating expansion of phi to sign times the colored expansion of
    theta.
    """
    if A.n_parts != phi.n_parts:
        raise ValueError("A and phi need the same number of parts")
    if psi.ground < 1 or psi.ground + A.degree > phi.degree:
        raise ValueError("degrees do not fit: need 1 <= k and k + l <= d")
    st1 = _stage1(A, phi)
    if st1 is None:
        return None
    sign, parts, colors = st1
    tails = _stage2(psi, parts)
    if tails is None:
        return None
    csign, theta = canonicalize_colored(ColoredGenSetComposition(tails, colors))
    if csign == 0:
        return None
    return sign * csign, theta


def _row_entry(phi, k, ell):
    """The one (psi, A) pair of shape (k, l) whose functional does not
    obviously kill phi, together with its act value.

    Stage 1 forces A: its nonempty parts are the flips of the traces of
    phi on [l], sorted into canonical order.  Stage 2 then forces psi
    from the traces of the stripped parts on [k].  Any other pair of the
    same shape fails its matching, so walking (phi, k, l) finds every
    nonzero entry of the assembled system.  None when the forced pair
    still canonicalizes to zero.
    """
    n = phi.n_parts
    traces = [tuple(q for q in part if q <= ell) for part in phi.parts]
    nonempty = sorted(
        (flip_positions((t,), ell)[0] for t in traces if t),
        key=lambda p: p[0],
    )
    A = GenSetComposition(tuple(nonempty) + ((),) * (n - len(nonempty)))
    sign, parts, colors = _stage1(A, phi)
    blocks = [t for t in (tuple(q for q in p if q <= k) for p in parts) if t]
    psi = SetPartition(flip_positions(tuple(blocks), k), k)
    tails = _stage2(psi, parts)
    csign, theta = canonicalize_colored(ColoredGenSetComposition(tails, colors))
    if csign == 0:
        return None
    return psi, A, sign * csign, theta


def assemble_system(n: int, d: int) -> SparseRowMatrix:
    """The sparse system cutting out, inside the span of alt_basis(n, d),
    the elements killed by every row-functional of the symmetric ideal.

    One row per (psi, A, theta) with some nonzero entry; the entry in
    column phi is the sign from act(psi, A, phi) when its colored output
    is theta.  The returned matrix carries the column compositions as
    .columns and the sorted row keys as .row_keys.
    """
    cols = alt_basis(n, d)
    index = {phi: c for c, phi in enumerate(cols)}
    buckets = {}
    for phi in cols:
        for k in range(1, d + 1):
            for ell in range(0, d - k + 1):
                got = _row_entry(phi, k, ell)
                if got is None:
                    continue
                psi, A, sign, theta = got
                buckets.setdefault((psi, A, theta), {})[index[phi]] = sign
    keys = sorted(
        buckets,
        key=lambda t: (t[0].to_text(), t[1].to_text(), t[2].to_text()),
    )
    M = SparseRowMatrix(len(cols), [buckets[key] for key in keys])
    M.columns = cols
    M.row_keys = keys
    return M


def _assemble_rows(n: int, d: int):
    """The rows of assemble_system(n, d) without the row-key bookkeeping.

    Solving for a dimension needs the row dicts and nothing else, and on
    the large instances the keyed form is the memory bottleneck: one
    composite (psi, A, theta) key per row adds up to gigabytes at n = 4,
    d = 10.  Joining the three text forms into one flat string keeps the
    grouping exact at a fraction of the footprint.  Returns (columns,
    rows) with the rows in first-touch order of the column-major walk,
    which is deterministic.
    """
    cols = alt_basis(n, d)
    index = {phi: c for c, phi in enumerate(cols)}
    buckets = {}
    for phi in cols:
        for k in range(1, d + 1):
            for ell in range(0, d - k + 1):
                got = _row_entry(phi, k, ell)
                if got is None:
                    continue
                psi, A, sign, theta = got
                key = "\0".join((psi.to_text(), A.to_text(), theta.to_text()))
                buckets.setdefault(key, {})[index[phi]] = sign
    return cols, list(buckets.values())


class AltElement:
    """A rational combination of canonical alternating basis elements."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n, d, terms):
        clean = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for phi, c in items:
            if phi.n_parts != n or (phi.degree != d and phi.parts):
                raise ValueError("term does not match the ambient (n, d)")
            if not phi.is_canonical():
                raise ValueError("terms must be canonical compositions")
            if sum(1 for p in phi.parts if not p) > 1:
                raise ValueError("at most one trailing empty part allowed")
            c = Fraction(c)
            if c:
                c = clean.get(phi, Fraction(0)) + c
                if c:
                    clean[phi] = c
                else:
                    del clean[phi]
        self.n = n
        self.d = d
        self.terms = clean

    def expand(self) -> FreePoly:
        """Word expansion: the combination of the basis expansions."""
        out = FreePoly(self.n)
        for phi, c in self.terms.items():
            out = out + expand_alt(phi).scale(c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AltElement)
            and (self.n, self.d) == (other.n, other.d)
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "AltElement(0)"
        bits = ", ".join(
            f"{phi.to_text()}: {c}" for phi, c in sorted(
                self.terms.items(), key=lambda t: t[0].to_text()
            )
        )
        return f"AltElement({bits})"


class AltSolution:
    """Outcome of solve_alt: sizes, mode, prime, optional exact basis."""

    __slots__ = ("n", "d", "alt_dim", "solution_dim", "mode", "prime", "basis")

    def __init__(self, n, d, alt_dim, solution_dim, mode, prime, basis):
        self.n = n
        self.d = d
        self.alt_dim = alt_dim
        self.solution_dim = solution_dim
        self.mode = mode
        self.prime = prime
        self.basis = basis

    def json_record(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "alt_dim": self.alt_dim,
            "solution_dim": self.solution_dim,
            "mode": self.mode,
            "prime": self.prime,
        }

    def __repr__(self):
        return (
            f"AltSolution(n={self.n}, d={self.d}, alt_dim={self.alt_dim}, "
            f"solution_dim={self.solution_dim}, mode={self.mode!r})"
        )


def _presolve(rows, m):
    """Eliminate unit rows before any echelon work.

    A one-entry row pins its variable class to zero; a two-entry row
    with unit coefficients glues two classes up to sign (a class equal
    to its own negative is pinned too).  Repeats until stable.  Returns
    (free, residual): the representatives of the surviving classes and
    the remaining longer rows rewritten over them.
    """
    parent = list(range(m))
    rel = [1] * m
    dead = [False] * m

    def find(x):
        s = 1
        while parent[x] != x:
            s *= rel[x]
            x = parent[x]
        return x, s

    def union(x, y, s):
        rx, sx = find(x)
        ry, sy = find(y)
        if rx == ry:
            if sx != s * sy:
                dead[rx] = True
            return
        parent[rx] = ry
        rel[rx] = sx * s * sy
        dead[ry] = dead[ry] or dead[rx]

    pending = list(rows)
    while True:
        residual = []
        changed = False
        for row in pending:
            acc = {}
            for v, c in row.items():
                r, s = find(v)
                if dead[r]:
                    continue
                acc[r] = acc.get(r, 0) + c * s
            acc = {r: c for r, c in acc.items() if c}
            if not acc:
                continue
            if len(acc) == 1:
                r = next(iter(acc))
                dead[find(r)[0]] = True
                changed = True
            elif len(acc) == 2 and all(abs(c) == 1 for c in acc.values()):
                (v1, c1), (v2, c2) = acc.items()
                union(v1, v2, -(c1 * c2))
                changed = True
            else:
                residual.append(acc)
        if not changed:
            break
        pending = residual

    roots = {find(v)[0] for v in range(m)}
    free = sorted(r for r in roots if not dead[r])
    pos = {r: i for i, r in enumerate(free)}
    out = []
    for row in pending:
        acc = {}
        for v, c in row.items():
            r, s = find(v)
            if dead[r]:
                continue
            acc[r] = acc.get(r, 0) + c * s
        acc = {pos[r]: c for r, c in acc.items() if c}
        if acc:
            out.append(acc)
    return free, out


# a dense echelon over w columns costs w*w*8 bytes at full rank, so past
# this width the modular solve goes through the triangular split instead
_SPLIT_MIN_COLS = 4096


def _split_order(cols, free):
    """Column order for the split solver: position in the text order of
    the surviving compositions, which empirically leaves far fewer
    uncovered columns than the enumeration order does."""
    ranked = sorted(range(len(free)), key=lambda i: cols[free[i]].to_text())
    order = [0] * len(free)
    for pos, i in enumerate(ranked):
        order[i] = pos
    return order


def _nullity_modp_split(rows, n_cols, p, order):
    """Nullity mod p of a sparse integer system too wide for a dense
    echelon.

    Rows whose minimal columns under the given order are pairwise
    distinct form a lower triangular block with invertible diagonal, so
    that block eliminates its pivot columns structurally: its kernel is
    materialized densely over the k uncovered columns, every remaining
    row is reduced into kernel coordinates, and the echelon runs only k
    wide.  Stops as soon as the kernel coordinates are exhausted.
    Returns (nullity, kernel, echelon) for the certification step.
    """
    norm = []
    for row in rows:
        nr = {c: v % p for c, v in row.items() if v % p}
        if nr:
            norm.append(nr)
    chosen = {}
    for i, nr in enumerate(norm):
        c = min(nr, key=order.__getitem__)
        if c not in chosen:
            chosen[c] = i
    free = [c for c in range(n_cols) if c not in chosen]
    k = len(free)
    V = np.zeros((n_cols, k), dtype=np.uint64)
    if k == 0:
        return 0, V, None
    for j, c in enumerate(free):
        V[c, j] = 1
    for c in sorted(chosen, key=order.__getitem__, reverse=True):
        nr = norm[chosen[c]]
        sup = [c2 for c2 in nr if c2 != c]
        if not sup:
            continue  # single-entry row pins its column to zero
        neg = p - pow(nr[c], -1, p)
        coe = np.array([[neg * nr[c2] % p for c2 in sup]], dtype=np.uint64)
        V[c] = matmul_modp(coe, V[sup], p)[0]
    ech = ModpEchelon(k, p)
    taken = set(chosen.values())
    for i, nr in enumerate(norm):
        if i in taken:
            continue
        sup = list(nr)
        coe = np.array([[nr[c] for c in sup]], dtype=np.uint64)
        ech.add_row(matmul_modp(coe, V[sup], p)[0])
        if ech.is_full_rank():
            break
    return k - ech.rank, V, ech


def _verify_split_nullspace(rows, V, ech, p):
    """Exact certification of a positive split nullity: reconstruct each
    lifted kernel vector from its mod-p image and check it against every
    row over the integers."""
    for y in ech.nullspace():
        x = matmul_modp(V, y.reshape(-1, 1).astype(np.uint64), p)[:, 0]
        fracs = [rational_reconstruct(int(t), p) for t in x]
        if any(f is None for f in fracs):
            return False
        den = 1
        for f in fracs:
            den = math.lcm(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        for row in rows:
            if sum(ints[c] * v for c, v in row.items()) != 0:
                return False
    return True


def _solve_wide(n, d, cols, free, residual, mode, prime, seed):
    """solve_alt continuation when the presolved system is too wide for
    a dense echelon.  A split nullity of zero is exact on its own; a
    positive nullity under the certified mode is lifted back and
    verified exactly, retrying on fresh primes like the perp tower."""
    order = _split_order(cols, free)
    alt_dim = len(cols)
    for retry in range(MAX_LEVEL_RETRIES):
        if retry == 0:
            p = check_prime(prime) if prime is not None else certification_prime(seed)
        else:
            p = certification_prime(f"{seed}:alt:{d}:{retry}")
        nly, V, ech = _nullity_modp_split(residual, len(free), p, order)
        if nly == 0:
            return AltSolution(n, d, alt_dim, 0, mode, p, None)
        if mode == MODP:
            return AltSolution(n, d, alt_dim, nly, MODP, p, None)
        if _verify_split_nullspace(residual, V, ech, p):
            return AltSolution(n, d, alt_dim, nly, MODP_CERTIFIED, p, None)
    raise CertificationError(
        f"split certification failed after {MAX_LEVEL_RETRIES} primes at n={n}, d={d}"
    )


def solve_alt(n: int, d: int, mode=MODP_CERTIFIED, prime=None, seed=0) -> AltSolution:
    """Nullspace of assemble_system(n, d): the alternating elements of
    the perp space in degree d.

    Exact mode returns a basis of AltElement; the modular modes return
    the dimension only, after a presolve pass that eliminates the unit
    rows the assembly mostly consists of.  Systems wider than a dense
    echelon can hold are solved by the triangular split.  A modular
    nullity of zero is exact regardless of mode, so the reported prime
    is None whenever no modular step was needed.
    """
    _check_mode(mode)
    if mode == EXACT:
        M = assemble_system(n, d)
        cols = M.columns
        vecs, _ = exact_nullspace(M.rows, len(cols))
        basis = tuple(
            AltElement(n, d, {cols[c]: v for c, v in vec.items()})
            for vec in vecs
        )
        return AltSolution(n, d, len(cols), len(basis), EXACT, None, basis)
    cols, rows = _assemble_rows(n, d)
    free, residual = _presolve(rows, len(cols))
    if not residual:
        return AltSolution(n, d, len(cols), len(free), mode, None, None)
    if len(free) > _SPLIT_MIN_COLS:
        return _solve_wide(n, d, cols, free, residual, mode, prime, seed)
    rr = rank(SparseRowMatrix(len(free), residual), mode=mode, prime=prime, seed=seed)
    dim = len(free) - rr.rank
    return AltSolution(n, d, len(cols), dim, rr.mode, rr.prime, None)


def word_intersection_dimension(n: int, d: int, system: str = "ncsym") -> int:
    """Brute-force cross-check for solve_alt: pair every ideal row
    against every alternating basis expansion and take the exact
    nullspace dimension of the resulting system."""
    cols = alt_basis(n, d)
    if d == 0:
        return len(cols)
    expansions = [expand_alt(phi) for phi in cols]
    ech = ExactEchelon(len(cols))
    for row in ideal_row_stream(system, n, d):
        entries = {}
        for c, P in enumerate(expansions):
            v = pairing(row, P)
            if v:
                entries[c] = v
        if entries:
            ech.add_row(entries)
        if ech.is_full_rank():
            break
    return len(cols) - ech.rank
