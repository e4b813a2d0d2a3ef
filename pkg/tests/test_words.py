"""Free algebra arithmetic, word derivatives, pairing, group actions."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncinv.words import (
    FreePoly,
    Permutation,
    Word,
    all_permutations,
    apply_reversed,
    d_letter,
    d_word,
    delta_w,
    int_to_word,
    multiply,
    pairing,
    pi_act,
    reverse,
    reverse_poly,
    sigma_act,
    word_to_int,
)


def W(letters, n):
    return Word(letters, n)


def P(n, *terms):
    return FreePoly(n, {W(ls, n): c for ls, c in terms})


# --- small strategies ------------------------------------------------------

def words(n=2, max_deg=4):
    return st.lists(
        st.integers(min_value=1, max_value=n), min_size=0, max_size=max_deg
    ).map(lambda ls: Word(ls, n))


def polys(n=2, max_deg=3):
    return st.dictionaries(
        words(n, max_deg),
        st.fractions(min_value=-3, max_value=3),
        max_size=4,
    ).map(lambda d: FreePoly(n, d))


# --- construction and basics ----------------------------------------------

def test_word_validation():
    with pytest.raises(ValueError):
        Word((0, 1), 2)
    with pytest.raises(ValueError):
        Word((3,), 2)
    assert Word((), 2).degree == 0


def test_zero_coefficients_are_purged():
    p = P(2, ((1,), 1), ((2,), 0))
    assert list(p.terms) == [W((1,), 2)]
    q = P(2, ((1,), 1)) - P(2, ((1,), 1))
    assert q.is_zero() and q.terms == {}


def test_word_order_degree_then_lex():
    ws = [W((2,), 2), W((1, 1), 2), W((1,), 2), W((), 2), W((1, 2), 2)]
    assert sorted(ws) == [
        W((), 2),
        W((1,), 2),
        W((2,), 2),
        W((1, 1), 2),
        W((1, 2), 2),
    ]


def test_word_int_codes_roundtrip():
    for n in (1, 2, 3):
        for d in range(4):
            for letters in product(range(1, n + 1), repeat=d):
                w = W(letters, n)
                assert int_to_word(word_to_int(w), d, n) == w
    # codes within a degree are the lexicographic ranks
    ws = sorted(W(ls, 3) for ls in product((1, 2, 3), repeat=3))
    assert [word_to_int(w) for w in ws] == list(range(27))


def test_code_concatenation_law():
    u, v = W((2, 1), 3), W((3,), 3)
    assert word_to_int(u * v) == word_to_int(u) * 3 + word_to_int(v)


# --- product ---------------------------------------------------------------

def test_multiply_examples():
    x1, x2 = P(2, ((1,), 1)), P(2, ((2,), 1))
    assert multiply(x1, x2) == P(2, ((1, 2), 1))
    assert multiply(x1 + x2, x1) == P(2, ((1, 1), 1), ((2, 1), 1))
    assert multiply(P(2, ((1, 2), 1)), FreePoly.one(2)) == P(2, ((1, 2), 1))


def test_multiply_alphabet_mismatch():
    with pytest.raises(ValueError):
        multiply(P(2, ((1,), 1)), P(3, ((1,), 1)))


@given(polys(), polys(), polys())
def test_multiply_bilinear_and_associative(f, g, h):
    assert multiply(f + g, h) == multiply(f, h) + multiply(g, h)
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))


# --- derivatives -----------------------------------------------------------

def test_d_letter_examples():
    assert d_letter(1, P(2, ((1, 2), 1))) == P(2, ((2,), 1))
    assert d_letter(1, P(2, ((2, 1), 1))).is_zero()
    assert d_letter(1, P(2, ((1, 2), 3), ((2, 1), 1))) == P(2, ((2,), 3))
    assert d_letter(1, FreePoly.one(2)).is_zero()


def test_d_word_examples():
    assert d_word(W((1, 2), 2), P(2, ((1, 2, 1), 1))) == P(2, ((1,), 1))
    assert d_word(W((2, 1), 2), P(2, ((1, 2, 1), 1))).is_zero()
    assert d_word(W((1, 1, 1), 2), P(2, ((1, 1), 1))).is_zero()


@given(words(2, 3), polys(2, 2))
def test_d_word_is_left_to_right_composition(u, f):
    step = f
    for a in u.letters:
        step = d_letter(a, step)
    assert d_word(u, f) == step


@given(words(2, 3), polys(2, 2))
def test_d_word_recovers_right_factor(u, g):
    uf = FreePoly.from_word(u)
    assert d_word(u, multiply(uf, g)) == g


# --- reversal and pairing --------------------------------------------------

def test_reverse():
    assert reverse(W((1, 2, 3), 3)) == W((3, 2, 1), 3)
    assert reverse(W((1,), 2)) == W((1,), 2)


@given(words(3, 5))
def test_reverse_involution(w):
    assert reverse(reverse(w)) == w


def test_apply_reversed_examples():
    f = P(3, ((1, 2), 1))
    assert apply_reversed(f, P(3, ((2, 1, 3), 1))) == P(3, ((3,), 1))
    f2 = P(2, ((1,), 1), ((2,), 1))
    assert apply_reversed(f2, P(2, ((1, 1), 1))) == P(2, ((1,), 1))
    assert apply_reversed(P(2, ((1,), 1)), FreePoly.one(2)).is_zero()


def test_pairing_examples():
    assert pairing(P(2, ((1, 2), 1)), P(2, ((1, 2), 1))) == 1
    assert pairing(P(2, ((1, 2), 1)), P(2, ((2, 1), 1))) == 0
    assert pairing(P(2, ((1,), 2), ((2,), 1)), P(2, ((1,), 1))) == 2


def test_pairing_delta_on_words():
    for n in (1, 2):
        for d1 in range(3):
            for d2 in range(3):
                for a in product(range(1, n + 1), repeat=d1):
                    for b in product(range(1, n + 1), repeat=d2):
                        u, v = FreePoly.from_word(W(a, n)), FreePoly.from_word(W(b, n))
                        assert pairing(u, v) == (1 if a == b else 0)


@given(polys(), polys())
def test_pairing_symmetric(f, g):
    assert pairing(f, g) == pairing(g, f)


@given(polys(2, 3), polys(2, 3))
def test_pairing_is_constant_term_of_reversed_operator(f, g):
    # the operator form of the dot product: words act by stripping their
    # own prefix, so the operator polynomial must be reversed first
    assert pairing(f, g) == apply_reversed(reverse_poly(f), g).constant_term()


@given(words(2, 2), polys(2, 2), polys(2, 4))
def test_adjointness(u, f, g):
    # multiplying by u on the left is adjoint to stripping the prefix u
    uf = multiply(FreePoly.from_word(u), f)
    assert pairing(uf, g) == pairing(f, d_word(u, g))


# --- symmetric group actions ------------------------------------------------

def test_permutation_sign():
    assert Permutation((1, 2, 3)).sign == 1
    assert Permutation((2, 1, 3)).sign == -1
    assert Permutation((2, 3, 1)).sign == 1
    with pytest.raises(ValueError):
        Permutation((1, 1))


def test_sigma_act_examples():
    swap = Permutation((2, 1))
    assert sigma_act(swap, P(2, ((1, 2, 1), 1))) == P(2, ((2, 1, 2), 1))
    ident = Permutation((1, 2))
    f = P(2, ((1, 2), 2), ((1,), 1))
    assert sigma_act(ident, f) == f


@given(polys(2, 3), polys(2, 2))
def test_sigma_act_is_automorphism(f, g):
    swap = Permutation((2, 1))
    assert sigma_act(swap, multiply(f, g)) == multiply(
        sigma_act(swap, f), sigma_act(swap, g)
    )


@given(polys(2, 3), polys(2, 3))
def test_sigma_act_preserves_pairing(f, g):
    for sigma in all_permutations(2):
        assert pairing(sigma_act(sigma, f), sigma_act(sigma, g)) == pairing(f, g)


def test_pi_act_examples():
    u = W((1, 2, 3), 3)
    cyc = Permutation((2, 3, 1))
    assert pi_act(u, cyc) == W((2, 3, 1), 3)
    assert pi_act(u, Permutation((1, 2, 3))) == u
    assert pi_act(W((1, 1, 2), 2), Permutation((2, 1, 3))) == W((1, 1, 2), 2)
    with pytest.raises(ValueError):
        pi_act(u, Permutation((2, 1)))


# --- alternating double sum --------------------------------------------------

def test_delta_w_frozen_values():
    assert delta_w(W((1,), 2), 2) == P(2, ((1,), 1), ((2,), -1))
    assert delta_w(W((1, 2), 2), 2).is_zero()
    assert delta_w(W((1, 1), 2), 2) == P(2, ((1, 1), 2), ((2, 2), -2))


def test_delta_w_is_alternating():
    for letters in [(1,), (1, 1), (1, 2), (1, 2, 2)]:
        for n in (2, 3):
            f = delta_w(W(letters, n), n)
            for sigma in all_permutations(n):
                assert sigma_act(sigma, f) == f.scale(sigma.sign)


# --- text forms --------------------------------------------------------------

def test_text_forms():
    assert W((1, 2, 1), 3).to_text() == "x1*x2*x1"
    assert W((), 2).to_text() == "1"
    assert FreePoly.zero(2).to_text() == "0"
    p = P(2, ((1,), 1), ((2,), -1))
    assert p.to_text() == "x1 - x2"
    q = P(2, ((1, 1), Fraction(3, 2)), ((), 2))
    assert q.to_text() == "2 + 3/2*x1*x1"
