"""Minimum witnesses, witness profiles and mean-value statistics of codes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Literal

import numpy as np

from .core import (
    Code,
    Codeword,
    CoordSet,
    _require_member,
    difference_family,
    unique_projections,
    windows,
)
from .hitting import greedy_hitting_set, min_hitting_set

Mode = Literal["exact", "greedy"]

GAMMA_PLUS_MAX_N = 4


def min_witness(C: Code, c: Codeword | int, mode: Mode = "exact") -> CoordSet:
    """Smallest witness of ``c`` (lexicographically first among the smallest).

    ``greedy`` mode adds the coordinate hitting the most remaining difference
    supports until every other word is separated.
    """
    x = _require_member(C, c)
    sets = difference_family(C.words, x)
    if mode == "exact":
        W = min_hitting_set(sets)
        assert W is not None  # words are distinct, so [n] always works
    elif mode == "greedy":
        W = greedy_hitting_set(sets)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CoordSet(C.n, W)


@dataclass(frozen=True)
class WitnessProfile:
    n: int
    sizes: dict[Codeword, int]
    parameter: int


def witness_profile(C: Code) -> WitnessProfile:
    sizes = {c: len(min_witness(C, c)) for c in C}
    return WitnessProfile(C.n, sizes, max(sizes.values(), default=0))


def _pairwise_differences(words: list[int]) -> list[int]:
    return [a ^ b for i, a in enumerate(words) for b in words[i + 1 :]]


def min_uniform_witness(C: Code, mode: Mode = "exact") -> CoordSet:
    """A window on which the projection is injective over the whole code."""
    sets = _pairwise_differences(C.masks)
    if mode == "exact":
        W = min_hitting_set(sets)
        assert W is not None
    elif mode == "greedy":
        W = greedy_hitting_set(sets)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    size = W.bit_count()
    assert len(C) <= 1 << size
    if mode == "exact" and 0 < len(C) <= C.n:
        # Bondy's theorem
        assert size <= len(C) - 1, (C, size)
    return CoordSet(C.n, W)


def witness_sets(C: Code, c: Codeword | int, w: int) -> list[CoordSet]:
    """All size-``w`` witnesses of ``c``, lexicographically sorted."""
    x = _require_member(C, c)
    if not 0 <= w <= C.n:
        raise ValueError(f"w={w} outside [0, {C.n}]")
    others = difference_family(C.words, x)
    return [CoordSet(C.n, W) for W in windows(C.n, w) if all(d & W for d in others)]


def witnessed_codewords(C: Code, W: CoordSet | int) -> list[Codeword]:
    mask = W.mask if isinstance(W, CoordSet) else W
    return [Codeword(C.n, x) for x in unique_projections(C.masks, mask)]


@dataclass(frozen=True)
class MeanStats:
    """Witness counts per word and per window for windows of one size.

    ``mean_witness_count`` averages over codewords, ``gamma`` over all
    ``C(n, w)`` windows.
    """

    n: int
    w: int
    size: int
    witness_counts: dict[Codeword, int]
    window_counts: dict[CoordSet, int]
    mean_witness_count: Fraction
    gamma: Fraction

    @property
    def pairs(self) -> int:
        return sum(self.window_counts.values())


def mean_stats(C: Code, w: int) -> MeanStats:
    if not 0 <= w <= C.n:
        raise ValueError(f"w={w} outside [0, {C.n}]")
    words = C.masks
    per_word = dict.fromkeys(words, 0)
    per_window: dict[CoordSet, int] = {}
    for W in windows(C.n, w):
        hit = unique_projections(words, W)
        per_window[CoordSet(C.n, W)] = len(hit)
        for x in hit:
            per_word[x] += 1
    total_w = sum(per_word.values())
    total_c = sum(per_window.values())
    assert total_w == total_c
    n_windows = comb(C.n, w)
    e_c = Fraction(total_w, len(words)) if words else Fraction(0)
    gamma = Fraction(total_c, n_windows)
    assert len(words) * e_c == n_windows * gamma
    return MeanStats(
        n=C.n,
        w=w,
        size=len(words),
        witness_counts={Codeword(C.n, x): k for x, k in per_word.items()},
        window_counts=per_window,
        mean_witness_count=e_c,
        gamma=gamma,
    )


def gamma(C: Code, w: int) -> Fraction:
    return mean_stats(C, w).gamma


def witnessed_subcode(C: Code, w: int) -> Code:
    """Words having at least one witness of size exactly ``w``."""
    words = C.masks
    keep: set[int] = set()
    for W in windows(C.n, w):
        keep.update(unique_projections(words, W))
        if len(keep) == len(words):
            break
    return Code(C.n, frozenset(keep))


# -- exhaustive gamma+ -------------------------------------------------------
#
# Codes of length n <= 4 are subsets of the 2^n words and so fit a 16-bit
# integer: code bit x is set iff word x belongs to the code. For a window W
# the words split into classes by projection; W witnesses a word iff the
# word's class meets the code in exactly one element.


def _class_masks(n: int, W: int) -> list[int]:
    classes: dict[int, int] = {}
    for x in range(1 << n):
        classes[x & W] = classes.get(x & W, 0) | (1 << x)
    return list(classes.values())


def _gamma_chunk(n: int, w: int, restrict: str, start: int, stop: int) -> tuple[int, int]:
    """Best (pair count, code index) over code indices in ``[start, stop)``."""
    codes = np.arange(start, stop, dtype=np.uint32)
    pairs = np.zeros(len(codes), dtype=np.int64)
    covered = np.zeros(len(codes), dtype=np.uint32)
    for W in windows(n, w):
        for cls in _class_masks(n, W):
            part = codes & np.uint32(cls)
            single = np.bitwise_count(part) == 1
            pairs += single
            covered |= np.where(single, part, np.uint32(0))
    if restrict == "w-witness-codes":
        pairs = np.where(covered == codes, pairs, -1)
    i = int(np.argmax(pairs))  # first maximum: smallest code index
    return int(pairs[i]), start + i


def gamma_plus_exhaustive(
    n: int,
    w: int,
    restrict: Literal["all-codes", "w-witness-codes"] = "all-codes",
    workers: int = 1,
    chunks: int = 1,
) -> tuple[Fraction, Code]:
    """Maximum of gamma(C, w) over all codes of length ``n`` (or w-witness ones).

    Ties go to the code whose indicator integer is smallest, so the result is
    the same for any ``workers``/``chunks`` split.
    """
    if n > GAMMA_PLUS_MAX_N:
        raise ValueError(f"exhaustive gamma+ is limited to n <= {GAMMA_PLUS_MAX_N}")
    if not 0 <= w <= n or n < 1:
        raise ValueError(f"need 0 <= w <= n, n >= 1; got n={n}, w={w}")
    if restrict not in ("all-codes", "w-witness-codes"):
        raise ValueError(f"unknown restriction {restrict!r}")
    total = 1 << (1 << n)
    chunks = max(1, chunks, workers)
    bounds = [total * i // chunks for i in range(chunks + 1)]
    jobs = [(n, w, restrict, a, b) for a, b in zip(bounds, bounds[1:]) if a < b]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_gamma_chunk, *zip(*jobs)))
    else:
        results = [_gamma_chunk(*job) for job in jobs]
    best_pairs, best_index = max(results, key=lambda r: (r[0], -r[1]))
    code = Code(n, frozenset(x for x in range(1 << n) if best_index >> x & 1))
    return Fraction(best_pairs, comb(n, w)), code

