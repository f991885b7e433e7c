"""Large w-witness codes: spheres, cubes, block-family codes, two-part codes."""

from __future__ import annotations

import math
import random
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .bounds import A_SEED, ball_size
from .core import Code, CoordSet, full_mask, members_to_mask, unique_projections, windows


@dataclass(frozen=True)
class SetFamily:
    n: int
    blocks: tuple[CoordSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if len({b.mask for b in self.blocks}) != len(self.blocks):
            raise ValueError("blocks must be distinct")
        for b in self.blocks:
            if b.n != self.n:
                raise ValueError(f"block over [{b.n}] in a family over [{self.n}]")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> SetFamily:
        return cls(n, tuple(CoordSet(n, m) for m in masks))

    @classmethod
    def from_members(cls, n: int, blocks: Iterable[Iterable[int]]) -> SetFamily:
        return cls(n, tuple(CoordSet.of(n, b) for b in blocks))

    @property
    def masks(self) -> list[int]:
        return [b.mask for b in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class DesignCheck:
    t: int
    k: int
    v: int
    is_steiner: bool
    max_pair_intersection: int


def design_check(F: SetFamily, t: int) -> DesignCheck:
    """Check whether ``F`` is a Steiner system S(t, k, v) with v = F.n."""
    sizes = {len(b) for b in F.blocks}
    k = sizes.pop() if len(sizes) == 1 else -1
    masks = F.masks
    max_meet = max(((a & b).bit_count() for a, b in combinations(masks, 2)), default=0)
    ok = k >= t and bool(masks)
    if ok:
        counts = Counter()
        for m in masks:
            for sub in combinations(CoordSet(F.n, m).members, t):
                counts[members_to_mask(sub)] += 1
        ok = len(counts) == math.comb(F.n, t) and all(c == 1 for c in counts.values())
    return DesignCheck(t=t, k=k, v=F.n, is_steiner=ok, max_pair_intersection=max_meet)


def sphere(n: int, k: int) -> Code:
    """All words of weight ``k``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return Code(n, frozenset(windows(n, k)))


def hamming_sphere(n: int, k: int, center: int) -> Code:
    return Code(n, frozenset(x ^ center for x in windows(n, k)))


def _submasks(mask: int) -> Iterable[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def cube_on_window(n: int, W: CoordSet) -> Code:
    if W.n != n:
        raise ValueError(f"window over [{W.n}] for length {n}")
    return Code(n, frozenset(_submasks(W.mask)))


def family_witnesses(F: SetFamily) -> dict[int, int]:
    """Map each word whose support lies in exactly one block to that block."""
    count: Counter[int] = Counter()
    owner: dict[int, int] = {}
    for b in F.masks:
        for x in _submasks(b):
            count[x] += 1
            owner[x] = b
    return {x: owner[x] for x, c in count.items() if c == 1}


def from_family(F: SetFamily) -> Code:
    """Words whose support is contained in one and only one block of ``F``."""
    return Code(F.n, frozenset(family_witnesses(F)))


def _span(rows: Sequence[Sequence[int]], q: int) -> list[tuple[int, ...]]:
    n = len(rows[0])
    out = []
    for coeffs in product(range(q), repeat=len(rows)):
        out.append(tuple(sum(a * r[i] for a, r in zip(coeffs, rows)) % q for i in range(n)))
    return out


_HAMMING_8_4 = (
    (1, 1, 1, 1, 0, 0, 0, 0),
    (0, 0, 1, 1, 1, 1, 0, 0),
    (0, 0, 0, 0, 1, 1, 1, 1),
    (0, 1, 0, 1, 0, 1, 0, 1),
)

# [I_6 | A] over GF(3), generating the extended ternary Golay code.
_GOLAY_A = (
    (0, 1, 1, 1, 1, 1),
    (1, 0, 1, 2, 2, 1),
    (1, 1, 0, 1, 2, 2),
    (1, 2, 1, 0, 1, 2),
    (1, 2, 2, 1, 0, 1),
    (1, 1, 2, 2, 1, 0),
)
_TERNARY_GOLAY_12_6 = tuple(
    tuple(1 if j == i else 0 for j in range(6)) + _GOLAY_A[i] for i in range(6)
)


def _weight_supports(rows, q: int, weight: int) -> list[int]:
    supports = set()
    for word in _span(rows, q):
        if sum(1 for a in word if a) == weight:
            supports.add(members_to_mask(i + 1 for i, a in enumerate(word) if a))
    return sorted(supports, key=lambda m: CoordSet(len(rows[0]), m).members)


def steiner_3_4_8() -> SetFamily:
    """S(3,4,8): supports of the weight-4 words of the extended [8,4] Hamming code."""
    F = SetFamily.from_masks(8, _weight_supports(_HAMMING_8_4, 2, 4))
    assert len(F) == 14 and design_check(F, 3).is_steiner
    return F


def steiner_5_6_12() -> SetFamily:
    """S(5,6,12): supports of the weight-6 words of the extended ternary Golay code."""
    F = SetFamily.from_masks(12, _weight_supports(_TERNARY_GOLAY_12_6, 3, 6))
    assert len(F) == 132 and design_check(F, 5).is_steiner
    return F


def steiner_family_code_size(A: int, w: int, d: int) -> int:
    """|C_F| for ``A`` weight-``w`` blocks at mutual distance >= ``d``."""
    if d % 2 or d < 2:
        raise ValueError(f"d must be even and >= 2, got {d}")
    return A * ball_size(w, d // 2 - 1)


def cw_code_search(n: int, d: int, w: int, effort: int = 50, seed: int = 0) -> SetFamily:
    """Randomized search for many weight-``w`` blocks meeting pairwise in <= w - d/2 points.

    Each of ``effort`` restarts runs a greedy fill followed by one-for-one
    swap moves. The size found is only a lower bound on A(n, d, w).
    """
    if d % 2 or d < 2:
        raise ValueError(f"d must be even and >= 2, got {d}")
    if not 0 <= w <= n:
        raise ValueError(f"need 0 <= w <= n, got n={n}, w={w}")
    limit = w - d // 2
    cands = windows(n, w)
    if limit < 0:
        return SetFamily.from_masks(n, cands[:1])
    if limit >= w - 1:
        return SetFamily.from_masks(n, cands)
    target = A_SEED.get((n, d, w))
    rng = random.Random(seed)
    m = len(cands)
    adj = [[j for j in range(m) if j != i and (cands[i] & cands[j]).bit_count() > limit] for i in range(m)]
    best: list[int] = []
    steps = 20 * m
    for _ in range(max(1, effort)):
        conf = [0] * m
        chosen: set[int] = set()
        tabu: dict[int, int] = {}

        def add(i: int) -> None:
            chosen.add(i)
            for j in adj[i]:
                conf[j] += 1

        def drop(i: int) -> None:
            chosen.discard(i)
            for j in adj[i]:
                conf[j] -= 1

        order = list(range(m))
        rng.shuffle(order)
        for i in order:
            if conf[i] == 0:
                add(i)
        run_best = sorted(chosen)
        for step in range(steps):
            free = [i for i in range(m) if i not in chosen and conf[i] == 0]
            if free:
                add(rng.choice(free))
            else:
                swaps = [i for i in range(m) if i not in chosen and conf[i] == 1 and tabu.get(i, -1) < step]
                if not swaps:
                    break
                i = rng.choice(swaps)
                out = next(j for j in adj[i] if j in chosen)
                drop(out)
                tabu[out] = step + 7
                add(i)
            if len(chosen) > len(run_best):
                run_best = sorted(chosen)
                if target is not None and len(run_best) >= target:
                    break
        if len(run_best) > len(best):
            best = run_best
        if target is not None and len(best) >= target:
            break
    return SetFamily.from_masks(n, sorted((cands[i] for i in best), key=lambda b: CoordSet(n, b).members))


def _check_two_part(n: int, w: int) -> None:
    if not (2 * w > n and w <= n):
        raise ValueError(f"two-part construction needs n/2 < w <= n, got n={n}, w={w}")


def two_part_pieces(n: int, w: int, D: Code) -> tuple[Code, Code]:
    """The pieces C1 (cube on [w] minus D) and C2 (weight-w lifts of D)."""
    _check_two_part(n, w)
    if D.n != w:
        raise ValueError(f"D must have length w={w}, got {D.n}")
    low = 2 * w - n
    for x in D.words:
        if x.bit_count() < low:
            raise ValueError(f"D word of weight {x.bit_count()} below 2w-n={low}")
    c1 = frozenset(x for x in range(1 << w) if x not in D.words)
    tails = {k: windows(n - w, k) for k in range(n - w + 1)}
    c2 = frozenset(x | (tail << w) for x in D.words for tail in tails[w - x.bit_count()])
    return Code(n, c1), Code(n, c2)


def two_part(n: int, w: int, D: Code) -> Code:
    c1, c2 = two_part_pieces(n, w, D)
    assert not c1.words & c2.words
    C = Code(n, c1.words | c2.words)
    assert len(C) <= 2**w + math.comb(n, w)
    return C


def two_part_sphere(n: int, w: int, t: int) -> Code:
    """Two-part code with D the weight-(w - t) words of length w."""
    _check_two_part(n, w)
    if t < 1 or w - t < 2 * w - n:
        raise ValueError(f"t={t} must satisfy 1 <= t <= n - w = {n - w}")
    if t > (n - w) // 2:
        warnings.warn(f"t={t} exceeds (n-w)/2; construction is still valid", stacklevel=2)
    C = two_part(n, w, sphere(w, w - t))
    assert len(C) == 2**w + math.comb(w, w - t) * (math.comb(n - w, t) - 1)
    return C


def _sphere_center(C: Code, k: int) -> list[int]:
    """Candidate centers x with C possibly equal to S_k(x)."""
    n = C.n
    words = list(C.words)
    if n == 0 or not words:
        return []
    # x_1 xor x_i is read off from how many words agree on coordinates 1 and i
    same_if_equal = 0
    if n >= 2:
        same_if_equal = math.comb(n - 2, k) + (math.comb(n - 2, k - 2) if k >= 2 else 0)
    rel = 0
    for i in range(1, n):
        agree = sum(1 for y in words if (y & 1) == (y >> i & 1))
        if agree != same_if_equal:
            rel |= 1 << i
    return [rel, rel ^ full_mask(n)]


def is_sphere_translate(C: Code) -> bool:
    k = C.n // 2
    if len(C) != math.comb(C.n, k):
        return False
    for x in _sphere_center(C, k):
        if all((y ^ x).bit_count() == k for y in C.words):
            return True
    return False


def window_count_histogram(C: Code, w: int) -> Counter[int]:
    words = C.masks
    return Counter(len(unique_projections(words, W)) for W in windows(C.n, w))


def sphere_translate_signature(C: Code, w: int) -> tuple[bool, Counter[int]]:
    if C.n > 24:
        raise ValueError("sphere-translate test is limited to n <= 24")
    return is_sphere_translate(C), window_count_histogram(C, w)
