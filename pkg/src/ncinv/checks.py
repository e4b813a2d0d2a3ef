"""Verification suites behind the command-line ``verify`` subcommand.

Each suite checks one structural identity the rest of the package
leans on, either exhaustively over a small range or on seeded random
instances.  They return a SuiteReport; nothing here raises on a
mathematical failure, so the caller can decide how loudly to complain.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .altsys import act, alt_basis, expand_alt, expand_colored
from .combinat import (
    Composition,
    SetComposition,
    enumerate_ordered_gen_comps,
    enumerate_set_partitions,
    quasi_shuffle_compositions,
    quasi_shuffle_setcomps,
    word_of_gencomp,
)
from .commutative import (
    CommPoly,
    bridge_identity_check,
    monomials,
    partial,
    psi,
)
from .generators import m_alpha, m_phi, mcal_a
from .perp import is_in_perp, perp_basis
from .words import (
    FreePoly,
    Word,
    apply_reversed,
    d_letter,
    d_word,
    delta_w,
    multiply,
    pairing,
    reverse,
)

__all__ = ["SuiteReport", "SUITES", "run_suite"]

MAX_FAILURES_KEPT = 20


@dataclass
class SuiteReport:
    """Outcome of one verification suite."""

    suite: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def record(self, description):
        self.passed = False
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(description)

    def json_record(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "cases": self.cases,
            "failures": list(self.failures),
            "params": dict(self.params),
        }


def _random_word(rng, n, d):
    return Word(tuple(rng.randrange(1, n + 1) for _ in range(d)), n)


def _random_free_poly(rng, n, d, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        w = _random_word(rng, n, d)
        terms[w] = terms.get(w, 0) + Fraction(rng.randrange(-5, 6))
    p = FreePoly(n)
    p.terms = {w: c for w, c in terms.items() if c}
    return p


def _random_comm_poly(rng, n, d, n_terms=4):
    mons = monomials(n, d)
    terms = {}
    for _ in range(n_terms):
        m = mons[rng.randrange(len(mons))]
        terms[m] = terms.get(m, 0) + Fraction(rng.randrange(-5, 6))
    return CommPoly(n, terms)


def suite_bridge(n=3, max_deg=4, trials=1000, seed=0):
    """Random pairing identities tying the free and commutative sides.

    Per trial: the free/commutative bridge through the arrangement sum
    and the content map, the adjointness of left multiplication and
    word derivatives, and symmetry of the coefficient pairing.
    """
    rep = SuiteReport("bridge", True, 0,
                      params={"n": n, "max_deg": max_deg,
                              "trials": trials, "seed": seed})
    rng = random.Random(seed)
    for _ in range(trials):
        nn = rng.randrange(1, n + 1)
        d = rng.randrange(1, max_deg + 1)
        f = _random_free_poly(rng, nn, d)
        P = _random_comm_poly(rng, nn, d)
        rep.cases += 1
        if not bridge_identity_check(f, P):
            rep.record("bridge identity failed: f=%s P=%s"
                       % (f.to_text(), P.to_text()))
        k = rng.randrange(1, 3)
        g = _random_free_poly(rng, nn, d + k)
        u = _random_word(rng, nn, k)
        rep.cases += 1
        lhs = pairing(multiply(FreePoly.from_word(u), f), g)
        if lhs != pairing(f, d_word(u, g)):
            rep.record("adjointness failed: u=%s f=%s g=%s"
                       % (u.to_text(), f.to_text(), g.to_text()))
        h = _random_free_poly(rng, nn, d)
        rep.cases += 1
        if pairing(f, h) != pairing(h, f):
            rep.record("pairing asymmetric: f=%s h=%s"
                       % (f.to_text(), h.to_text()))
    return rep


def suite_embed(n=3, max_deg=3, trials=200, seed=0):
    """Arrangement sums carry commutative perps into the free ones.

    Exhaustive part: every exact perp basis element maps into the free
    perp.  Random part: membership on either side of the arrangement
    map agrees, in both directions.
    """
    rep = SuiteReport("embed", True, 0,
                      params={"n": n, "max_deg": max_deg,
                              "trials": trials, "seed": seed})
    pairs = (("sym", "ncsym"), ("qsym", "ncqsym"))
    for comm_sys, free_sys in pairs:
        for nn in range(1, n + 1):
            for d in range(0, max_deg + 1):
                for Q in perp_basis(comm_sys, nn, d):
                    rep.cases += 1
                    if not is_in_perp(psi(Q), free_sys, nn):
                        rep.record(
                            "%s basis escapes %s perp: n=%d d=%d Q=%s"
                            % (comm_sys, free_sys, nn, d, Q.to_text()))
    rng = random.Random(seed)
    for _ in range(trials):
        comm_sys, free_sys = pairs[rng.randrange(2)]
        nn = rng.randrange(1, n + 1)
        d = rng.randrange(1, max_deg + 1)
        Q = _random_comm_poly(rng, nn, d)
        rep.cases += 1
        if is_in_perp(Q, comm_sys, nn) != is_in_perp(psi(Q), free_sys, nn):
            rep.record("membership mismatch across the arrangement map: "
                       "%s n=%d Q=%s" % (comm_sys, nn, Q.to_text()))
    return rep


def suite_deltaw(n=3, max_deg=4, trials=None, seed=None):
    """Exhaustive scan of the alternating double sums over short words.

    The sum lands in the perp exactly when it vanishes or the word's
    letter multiplicities are a staircase (one letter missing, one
    appearing once, and so on).
    """
    rep = SuiteReport("deltaw", True, 0,
                      params={"n": n, "max_deg": max_deg})
    for nn in range(2, n + 1):
        stair = list(range(nn))
        for d in range(1, max_deg + 1):
            for letters in product(range(1, nn + 1), repeat=d):
                rep.cases += 1
                w = Word(letters, nn)
                D = delta_w(w, nn)
                counts = Counter(letters)
                content = sorted(counts.get(a, 0) for a in range(1, nn + 1))
                predicted = D.is_zero() or content == stair
                if is_in_perp(D, "ncsym", nn) != predicted:
                    rep.record("membership surprise at w=%s (n=%d)"
                               % (w.to_text(), nn))
    return rep


def suite_actrule(n=3, max_deg=4, trials=None, seed=None):
    """Exhaustive check of the combinatorial action rule against words.

    For every alternating basis element, prefix length, and stripping
    composition, the rule's output (zero, or a signed colored target)
    must match evaluating the operators on the actual word expansion.
    """
    rep = SuiteReport("actrule", True, 0,
                      params={"n": n, "max_deg": max_deg})
    for nn in range(1, n + 1):
        for d in range(0, max_deg + 1):
            for phi in alt_basis(nn, d):
                EP = expand_alt(phi)
                for k in range(1, d + 1):
                    for ps in enumerate_set_partitions(k):
                        if ps.length > nn:
                            continue
                        MP = m_phi(ps, nn)
                        for ell in range(0, d - k + 1):
                            for A in enumerate_ordered_gen_comps(ell, nn, nn):
                                rep.cases += 1
                                u = reverse(word_of_gencomp(A))
                                oracle = apply_reversed(MP, d_word(u, EP))
                                got = act(ps, A, phi)
                                if got is None:
                                    if not oracle.is_zero():
                                        rep.record("rule says zero, words do "
                                                   "not: %s | %s | %s"
                                                   % (ps.to_text(), A.to_text(),
                                                      phi.to_text()))
                                    continue
                                sign, th = got
                                want = expand_colored(th, n=nn).scale(sign)
                                if oracle.terms != want.terms:
                                    rep.record("rule output wrong: %s | %s | %s"
                                               % (ps.to_text(), A.to_text(),
                                                  phi.to_text()))
    return rep


def suite_products(n=3, max_deg=5, trials=None, seed=None):
    """Generators multiply by quasi-shuffles, in both families."""
    rep = SuiteReport("products", True, 0,
                      params={"n": n, "max_deg": max_deg})
    comps = {k: list(_compositions_of(k)) for k in range(1, max_deg)}
    for nn in range(1, n + 1):
        for ka in range(1, max_deg):
            for kb in range(1, max_deg - ka + 1):
                for A in comps[ka]:
                    for B in comps[kb]:
                        rep.cases += 1
                        lhs = m_alpha(A, nn) * m_alpha(B, nn)
                        rhs = CommPoly.zero(nn)
                        for C, mult in quasi_shuffle_compositions(A, B).items():
                            rhs = rhs + m_alpha(C, nn) * mult
                        if lhs != rhs:
                            rep.record("composition product failed: n=%d %s * %s"
                                       % (nn, A.parts, B.parts))
    setcomps = {k: list(_set_compositions_of(k)) for k in range(1, max_deg)}
    for nn in range(1, n + 1):
        for ka in range(1, max_deg):
            for kb in range(1, max_deg - ka + 1):
                for A in setcomps[ka]:
                    for B in setcomps[kb]:
                        rep.cases += 1
                        lhs = mcal_a(A, nn) * mcal_a(B, nn)
                        rhs = FreePoly.zero(nn)
                        for C, mult in quasi_shuffle_setcomps(A, B).items():
                            rhs = rhs + mcal_a(C, nn).scale(mult)
                        if lhs != rhs:
                            rep.record("ordered product failed: n=%d %s * %s"
                                       % (nn, A.parts, B.parts))
    return rep


def suite_closure(n=3, max_deg=4, trials=None, seed=None):
    """Perps are closed under letter derivatives (free) and partials
    (commutative)."""
    rep = SuiteReport("closure", True, 0,
                      params={"n": n, "max_deg": max_deg})
    for system in ("ncsym", "ncqsym"):
        for nn in range(1, n + 1):
            for d in range(1, max_deg + 1):
                for P in perp_basis(system, nn, d):
                    for a in range(1, nn + 1):
                        rep.cases += 1
                        if not is_in_perp(d_letter(a, P), system, nn):
                            rep.record("%s perp not closed: n=%d d=%d a=%d"
                                       % (system, nn, d, a))
    for system in ("sym", "qsym"):
        for nn in range(1, n + 1):
            for d in range(1, max_deg + 1):
                for P in perp_basis(system, nn, d):
                    for i in range(1, nn + 1):
                        rep.cases += 1
                        if not is_in_perp(partial(i, P), system, nn):
                            rep.record("%s perp not closed: n=%d d=%d i=%d"
                                       % (system, nn, d, i))
    return rep


def _compositions_of(k):
    def parts_of(m):
        if m == 0:
            yield ()
            return
        for first in range(1, m + 1):
            for rest in parts_of(m - first):
                yield (first,) + rest

    for parts in parts_of(k):
        yield Composition(parts)


def _set_compositions_of(k):
    from itertools import permutations

    for sp in enumerate_set_partitions(k):
        for order in permutations(sp.blocks):
            yield SetComposition(order)


SUITES = {
    "bridge": suite_bridge,
    "embed": suite_embed,
    "deltaw": suite_deltaw,
    "actrule": suite_actrule,
    "products": suite_products,
    "closure": suite_closure,
}


def run_suite(name, **kwargs):
    """Dispatch a suite by name, dropping kwargs it does not take."""
    if name not in SUITES:
        raise ValueError("unknown suite %r (choose from %s)"
                         % (name, ", ".join(sorted(SUITES))))
    fn = SUITES[name]
    accepted = fn.__code__.co_varnames[:fn.__code__.co_argcount]
    passed = {k: v for k, v in kwargs.items()
              if k in accepted and v is not None}
    return fn(**passed)
