import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from witnesscodes import (
    Code,
    Codeword,
    CoordSet,
    complement,
    difference_support,
    has_w_witness_property,
    is_witness,
    permute,
    support,
    translate,
)
from witnesscodes.core import LengthMismatch, NotACodeword, first_failure, permute_set, permute_word
from witnesscodes.constructions import sphere

from conftest import codes
import oracles

W1_PLUS_ZERO = Code.from_strings(["100", "010", "001", "000"])


def cs(n, *members):
    return CoordSet.of(n, members)


@pytest.mark.parametrize(
    "word,expected",
    [("1100", (1, 2)), ("0000", ()), ("0101", (2, 4))],
)
def test_support(word, expected):
    assert support(Codeword.from_str(word)).members == expected


def test_difference_support():
    a, b = Codeword.from_str("1100"), Codeword.from_str("1010")
    assert difference_support(a, b).members == (2, 3)
    assert difference_support(a, a).members == ()
    assert difference_support(Codeword.from_str("0000"), Codeword.from_str("1111")).members == (1, 2, 3, 4)
    with pytest.raises(LengthMismatch):
        difference_support(a, Codeword.from_str("110"))


def test_string_order_puts_coordinate_one_first():
    c = Codeword.from_str("1000")
    assert c.bits == 1
    assert str(c) == "1000"
    assert str(cs(5, 3, 1)) == "{1,3}"


def test_is_witness_examples():
    C = Code.from_strings(["100", "010", "001"])
    assert is_witness(C, Codeword.from_str("100"), cs(3, 1))
    zero = Codeword.from_str("000")
    for k in range(3):
        for W in itertools.combinations([1, 2, 3], k):
            assert not is_witness(W1_PLUS_ZERO, zero, cs(3, *W))
    single = Code.from_strings(["0110"])
    assert is_witness(single, Codeword.from_str("0110"), cs(4))


def test_is_witness_rejects_non_member():
    with pytest.raises(NotACodeword):
        is_witness(W1_PLUS_ZERO, Codeword.from_str("111"), cs(3, 1))


def test_property_on_sphere_uses_supports():
    C = sphere(4, 2)
    ok, choice = has_w_witness_property(C, 2)
    assert ok
    # a weight-2 word is isolated by its own support, but the lex-first
    # witness can be smaller in lex order; each choice must be a witness
    for c, W in choice.items():
        assert len(W) == 2 and is_witness(C, c, W)
    assert is_witness(C, Codeword.from_str("1100"), cs(4, 1, 2))
    assert all(is_witness(C, c, support(c)) for c in C)


def test_property_examples():
    assert not has_w_witness_property(W1_PLUS_ZERO, 2)[0]
    assert str(first_failure(W1_PLUS_ZERO, 2)) == "000"
    assert has_w_witness_property(W1_PLUS_ZERO, 3)[0]
    for n in range(1, 6):
        assert has_w_witness_property(Code.cube(n), n)[0]
    assert has_w_witness_property(Code(3), 0) == (True, {})
    assert has_w_witness_property(Code.from_strings(["101"]), 0)[0]


def test_symmetry_examples():
    C = Code.from_strings(["100", "010"])
    assert translate(C, Codeword.from_str("000")) == C
    assert translate(C, Codeword.from_str("111")).strings() == ["011", "101"]
    for n, k in [(4, 1), (5, 2), (6, 3)]:
        assert complement(sphere(n, k)) == sphere(n, n - k)
    with pytest.raises(LengthMismatch):
        translate(C, Codeword.from_str("11"))


def test_code_rejects_duplicates_and_bad_lengths():
    with pytest.raises(ValueError):
        Code.from_strings(["01", "01"])
    with pytest.raises(LengthMismatch):
        Code.from_strings(["01", "011"])
    with pytest.raises(ValueError):
        Code(65)


@given(codes(max_n=6, max_size=12, min_size=1), st.data())
def test_is_witness_matches_oracle(C, data):
    c = data.draw(st.sampled_from(list(C)))
    members = data.draw(st.sets(st.integers(1, C.n)))
    words = oracles.words_of(C.strings())
    expected = oracles.witnesses(words, oracles.words_of([str(c)])[0], [m - 1 for m in members])
    assert is_witness(C, c, cs(C.n, *members)) == expected


@given(codes(max_n=6, max_size=12), st.integers(0, 6))
def test_property_matches_oracle(C, w):
    w = min(w, C.n)
    words = oracles.words_of(C.strings())
    assert has_w_witness_property(C, w)[0] == oracles.has_property(words, w)


@given(codes(max_n=7, max_size=15, min_size=1), st.data())
def test_superset_closure(C, data):
    c = data.draw(st.sampled_from(list(C)))
    small = data.draw(st.sets(st.integers(1, C.n)))
    extra = data.draw(st.sets(st.integers(1, C.n)))
    if is_witness(C, c, cs(C.n, *small)):
        assert is_witness(C, c, cs(C.n, *(small | extra)))


@given(codes(max_n=7, max_size=15, min_size=1), st.data())
def test_subcode_monotonicity(C, data):
    c = data.draw(st.sampled_from(list(C)))
    keep = data.draw(st.sets(st.sampled_from(sorted(C.words))))
    sub = Code(C.n, frozenset(keep) | {c.bits})
    W = cs(C.n, *data.draw(st.sets(st.integers(1, C.n))))
    if is_witness(C, c, W):
        assert is_witness(sub, c, W)


@given(codes(max_n=6, max_size=12, min_size=1), st.data())
def test_symmetry_equivariance(C, data):
    c = data.draw(st.sampled_from(list(C)))
    W = cs(C.n, *data.draw(st.sets(st.integers(1, C.n))))
    x = Codeword(C.n, data.draw(st.integers(0, (1 << C.n) - 1)))
    sigma = data.draw(st.permutations(range(1, C.n + 1)))
    base = is_witness(C, c, W)
    assert is_witness(translate(C, x), Codeword(C.n, c.bits ^ x.bits), W) == base
    assert is_witness(permute(C, sigma), permute_word(c, sigma), permute_set(W, sigma)) == base


@given(codes(max_n=7, max_size=20), st.integers(0, 7))
def test_property_is_monotone_in_w(C, w):
    w = min(w, C.n)
    ok = has_w_witness_property(C, w)[0]
    for v in range(C.n + 1):
        if ok and v >= w:
            assert has_w_witness_property(C, v)[0]
        if not ok and v <= w:
            assert not has_w_witness_property(C, v)[0]


@given(codes(max_n=7, max_size=20), st.integers(0, 7))
def test_choice_is_lex_first_of_exact_size(C, w):
    w = min(w, C.n)
    ok, choice = has_w_witness_property(C, w)
    if not ok:
        return
    assert set(choice) == set(C)
    for c, W in choice.items():
        assert len(W) == w
        first = next(
            S for S in itertools.combinations(range(1, C.n + 1), w) if is_witness(C, c, cs(C.n, *S))
        )
        assert W.members == first


@settings(max_examples=30)
@given(st.integers(1, 6))
def test_singleton_code_has_empty_witness(n):
    C = Code(n, frozenset({0}))
    assert has_w_witness_property(C, 0)[0]
