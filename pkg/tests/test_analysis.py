import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from witnesscodes import Code, Codeword, CoordSet, has_w_witness_property, is_witness
from witnesscodes.analysis import (
    GAMMA_PLUS_MAX_N,
    gamma,
    gamma_plus_exhaustive,
    mean_stats,
    min_uniform_witness,
    min_witness,
    witness_profile,
    witness_sets,
    witnessed_codewords,
    witnessed_subcode,
)
from witnesscodes.constructions import cube_on_window, from_family, sphere, steiner_3_4_8
from witnesscodes.hitting import lex_first_hitting_set, min_hitting_set

from conftest import codes
import oracles

W1_PLUS_ZERO = Code.from_strings(["100", "010", "001", "000"])


def cw(s):
    return Codeword.from_str(s)


def test_min_witness_examples():
    n = 5
    C = Code(n, frozenset(1 << i for i in range(n)))
    for c in C:
        assert min_witness(C, c).members == tuple(i + 1 for i in range(n) if c.bits >> i & 1)
    assert min_witness(Code.from_strings(["011"]), cw("011")).members == ()
    even = Code.from_strings(["000", "011", "101", "110"])
    assert min_witness(even, cw("000")).members == (1, 2)


def test_witness_profile_examples():
    p = witness_profile(sphere(4, 2))
    assert set(p.sizes.values()) == {2} and p.parameter == 2
    p = witness_profile(W1_PLUS_ZERO)
    assert sorted(p.sizes.values()) == [1, 1, 1, 3] and p.parameter == 3
    p = witness_profile(Code.from_strings(["1010"]))
    assert list(p.sizes.values()) == [0] and p.parameter == 0


def test_min_uniform_witness_examples():
    C = Code.from_strings(["0000", "1100", "1010"])
    W = min_uniform_witness(C)
    assert len(W) == 2
    # {2,3} separates the three words too; {1,2} is the lexicographically first
    assert W.members == (1, 2)
    assert len({x & CoordSet.of(4, [2, 3]).mask for x in C.words}) == 3
    assert min_uniform_witness(Code.from_strings(["0110"])).members == ()
    assert min_uniform_witness(Code.cube(4)).members == (1, 2, 3, 4)


def test_witness_sets_examples():
    S = sphere(4, 2)
    assert [W.members for W in witness_sets(S, cw("1100"), 2)] == [(1, 2), (3, 4)]
    assert [W.members for W in witness_sets(Code.from_strings(["01"]), cw("01"), 0)] == [()]
    assert witness_sets(W1_PLUS_ZERO, cw("000"), 2) == []


def test_witnessed_codewords_examples():
    S = sphere(4, 2)
    assert [str(c) for c in witnessed_codewords(S, CoordSet.of(4, [1, 2]))] == ["0011", "1100"]
    F = steiner_3_4_8()
    C = from_family(F)
    for block in F.blocks:
        assert len(witnessed_codewords(C, block)) == 5
    assert witnessed_codewords(S, CoordSet.full(4)) == list(S)


def test_mean_stats_examples():
    m = mean_stats(sphere(4, 2), 2)
    assert m.gamma == 2 and m.mean_witness_count == 2
    assert 6 * m.mean_witness_count == 6 * m.gamma
    empty = mean_stats(Code(4), 2)
    assert empty.gamma == 0 and empty.mean_witness_count == 0 and empty.pairs == 0
    cube = cube_on_window(4, CoordSet.of(4, [1, 2]))
    m = mean_stats(cube, 2)
    assert m.gamma * math.comb(4, 2) == 4
    assert m.window_counts[CoordSet.of(4, [1, 2])] == 4


def test_witnessed_subcode_examples():
    assert witnessed_subcode(W1_PLUS_ZERO, 1).strings() == ["001", "010", "100"]
    S = sphere(5, 2)
    assert witnessed_subcode(S, 2) == S
    assert len(witnessed_subcode(Code.cube(3), 1)) == 0


def test_gamma_plus_examples():
    for n in range(1, GAMMA_PLUS_MAX_N + 1):
        assert gamma_plus_exhaustive(n, n)[0] == 2**n
    with pytest.raises(ValueError):
        gamma_plus_exhaustive(5, 2)
    assert gamma_plus_exhaustive(3, 1)[0] >= gamma_plus_exhaustive(4, 1)[0]


def _gamma_plus_oracle(n, w):
    cube = oracles.all_words(n)
    wins = list(itertools.combinations(range(n), w))
    best = Fraction(0)
    for mask in range(1 << len(cube)):
        code = [cube[i] for i in range(len(cube)) if mask >> i & 1]
        total = sum(oracles.window_count(code, W) for W in wins)
        best = max(best, Fraction(total, len(wins)))
    return best


@pytest.mark.parametrize("n,w", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_gamma_plus_matches_oracle(n, w):
    value, code = gamma_plus_exhaustive(n, w)
    assert value == _gamma_plus_oracle(n, w)
    assert gamma(code, w) == value


# Values from the independent brute-force oracle above, extended to n = 4 by the
# vectorized enumeration and frozen here.
GAMMA_PLUS = {(2, 1): Fraction(2), (3, 1): Fraction(2), (4, 1): Fraction(2), (4, 2): Fraction(10, 3)}


@pytest.mark.parametrize("key", sorted(GAMMA_PLUS))
def test_gamma_plus_frozen(key):
    assert gamma_plus_exhaustive(*key)[0] == GAMMA_PLUS[key]


@pytest.mark.parametrize("n", range(1, GAMMA_PLUS_MAX_N + 1))
def test_gamma_plus_modes_agree(n):
    for w in range(n + 1):
        a, _ = gamma_plus_exhaustive(n, w, "all-codes")
        b, code = gamma_plus_exhaustive(n, w, "w-witness-codes")
        assert a == b
        assert has_w_witness_property(code, w)[0]


def test_gamma_plus_worker_invariance():
    base = gamma_plus_exhaustive(4, 2)
    assert gamma_plus_exhaustive(4, 2, chunks=7) == base
    assert gamma_plus_exhaustive(4, 2, workers=2) == base


@settings(max_examples=60, deadline=None)
@given(codes(max_n=10, max_size=50, min_size=1), st.data())
def test_min_witness_is_minimum(C, data):
    c = data.draw(st.sampled_from(list(C)))
    W = min_witness(C, c)
    assert is_witness(C, c, W)
    if len(W):
        smaller = list(itertools.combinations(range(1, C.n + 1), len(W) - 1))
        assert not any(is_witness(C, c, CoordSet.of(C.n, S)) for S in smaller)


@settings(max_examples=60, deadline=None)
@given(codes(max_n=6, max_size=12, min_size=1), st.data())
def test_min_witness_matches_oracle(C, data):
    c = data.draw(st.sampled_from(list(C)))
    words = oracles.words_of(C.strings())
    assert min_witness(C, c).members == oracles.min_witness(words, oracles.words_of([str(c)])[0])


@given(codes(max_n=9, max_size=30, min_size=1), st.data())
def test_greedy_is_valid_and_not_smaller(C, data):
    c = data.draw(st.sampled_from(list(C)))
    g = min_witness(C, c, "greedy")
    assert is_witness(C, c, g)
    assert len(g) >= len(min_witness(C, c))


@given(codes(max_n=8, max_size=20), st.integers(0, 8))
def test_double_count_identity(C, w):
    w = min(w, C.n)
    m = mean_stats(C, w)
    assert sum(m.witness_counts.values()) == sum(m.window_counts.values())
    assert len(C) * m.mean_witness_count == math.comb(C.n, w) * m.gamma


@given(codes(max_n=6, max_size=12, min_size=1), st.integers(0, 6), st.data())
def test_adjointness(C, w, data):
    w = min(w, C.n)
    c = data.draw(st.sampled_from(list(C)))
    found = {W.mask for W in witness_sets(C, c, w)}
    for members in itertools.combinations(range(1, C.n + 1), w):
        W = CoordSet.of(C.n, members)
        assert (W.mask in found) == (c in witnessed_codewords(C, W))


@given(codes(max_n=7, max_size=20), st.integers(0, 7))
def test_witnessed_subcode_raises_gamma(C, w):
    w = min(w, C.n)
    sub = witnessed_subcode(C, w)
    assert has_w_witness_property(sub, w)[0]
    assert gamma(sub, w) >= gamma(C, w)


@settings(deadline=None)
@given(codes(max_n=8, max_size=8, min_size=1))
def test_bondy(C):
    W = min_uniform_witness(C)
    assert len(C) <= 2 ** len(W)
    if len(C) <= C.n:
        assert len(W) <= len(C) - 1
    projections = {x & W.mask for x in C.words}
    assert len(projections) == len(C)


@given(st.lists(st.integers(1, 255), max_size=12))
def test_min_hitting_set_matches_brute_force(sets):
    best = min_hitting_set(sets)
    for k in range(9):
        hits = [m for m in itertools.combinations(range(8), k) if all(any(s >> i & 1 for i in m) for s in sets)]
        if hits:
            assert best == sum(1 << i for i in hits[0])
            assert lex_first_hitting_set(sets, k, 8) == best
            break
