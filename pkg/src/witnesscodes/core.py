"""Codewords, codes, coordinate sets and the witness predicate.

Words and coordinate sets are bit-packed into Python ints: coordinate ``i``
(1-based, as used in all I/O) lives in bit ``i - 1``. String forms put
coordinate 1 leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .hitting import lex_first_hitting_set

MAX_LENGTH = 64


class LengthMismatch(ValueError):
    pass


class NotACodeword(ValueError):
    pass


def _check_length(n: int) -> None:
    if not 0 <= n <= MAX_LENGTH:
        raise ValueError(f"length must be in [0, {MAX_LENGTH}], got {n}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits_to_str(bits: int, n: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(n))


def str_to_bits(s: str) -> int:
    bits = 0
    for i, ch in enumerate(s):
        if ch == "1":
            bits |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a binary string: {s!r}")
    return bits


def word_key(bits: int, n: int) -> str:
    """Sort key putting words in string-lexicographic order."""
    return bits_to_str(bits, n)


def mask_members(mask: int) -> tuple[int, ...]:
    """1-based coordinates of a mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return tuple(out)


def members_to_mask(members: Iterable[int]) -> int:
    mask = 0
    for m in members:
        mask |= 1 << (m - 1)
    return mask


@dataclass(frozen=True)
class Codeword:
    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_length(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits outside [1, {self.n}]")

    @classmethod
    def from_str(cls, s: str) -> Codeword:
        return cls(len(s), str_to_bits(s))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return bits_to_str(self.bits, self.n)

    def __lt__(self, other: Codeword) -> bool:
        return (self.n, str(self)) < (other.n, str(other))


@dataclass(frozen=True)
class CoordSet:
    n: int
    mask: int

    def __post_init__(self) -> None:
        _check_length(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"members outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> CoordSet:
        members = list(members)
        for m in members:
            if not 1 <= m <= n:
                raise ValueError(f"coordinate {m} outside [1, {n}]")
        return cls(n, members_to_mask(members))

    @classmethod
    def full(cls, n: int) -> CoordSet:
        return cls(n, full_mask(n))

    @property
    def members(self) -> tuple[int, ...]:
        return mask_members(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __lt__(self, other: CoordSet) -> bool:
        return (len(self), self.members) < (len(other), other.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class Code:
    """A set of distinct words of common length ``n``.

    ``words`` holds the bit masks; iterate the code to get :class:`Codeword`
    objects in lexicographic order.
    """

    n: int
    words: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        _check_length(self.n)
        if not isinstance(self.words, frozenset):
            object.__setattr__(self, "words", frozenset(self.words))
        top = full_mask(self.n)
        for x in self.words:
            if x < 0 or x & ~top:
                raise ValueError(f"word {x:#x} does not fit length {self.n}")

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int | None = None) -> Code:
        strings = list(strings)
        if n is None:
            if not strings:
                raise ValueError("length required for an empty code")
            n = len(strings[0])
        masks = []
        for s in strings:
            if len(s) != n:
                raise LengthMismatch(f"word {s!r} has length {len(s)}, expected {n}")
            masks.append(str_to_bits(s))
        if len(set(masks)) != len(masks):
            raise ValueError("duplicate words")
        return cls(n, frozenset(masks))

    @classmethod
    def from_codewords(cls, n: int, words: Iterable[Codeword]) -> Code:
        masks = set()
        for c in words:
            if c.n != n:
                raise LengthMismatch(f"word length {c.n} != {n}")
            masks.add(c.bits)
        return cls(n, frozenset(masks))

    @classmethod
    def cube(cls, n: int) -> Code:
        return cls(n, frozenset(range(1 << n)))

    @property
    def masks(self) -> list[int]:
        """Word masks in lexicographic (string) order."""
        return sorted(self.words, key=lambda x: word_key(x, self.n))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Codeword]:
        return (Codeword(self.n, x) for x in self.masks)

    def __contains__(self, c: object) -> bool:
        if isinstance(c, Codeword):
            return c.n == self.n and c.bits in self.words
        return c in self.words

    def strings(self) -> list[str]:
        return [bits_to_str(x, self.n) for x in self.masks]

    def __repr__(self) -> str:
        return f"Code(n={self.n}, {self.strings()})"


def _bits(c: Codeword | int) -> int:
    return c.bits if isinstance(c, Codeword) else c


def _mask(W: CoordSet | int) -> int:
    return W.mask if isinstance(W, CoordSet) else W


def support(c: Codeword) -> CoordSet:
    return CoordSet(c.n, c.bits)


def difference_support(c: Codeword, other: Codeword) -> CoordSet:
    if c.n != other.n:
        raise LengthMismatch(f"lengths {c.n} and {other.n} differ")
    return CoordSet(c.n, c.bits ^ other.bits)


def _require_member(C: Code, c: Codeword | int) -> int:
    x = _bits(c)
    if isinstance(c, Codeword) and c.n != C.n:
        raise LengthMismatch(f"word length {c.n} != code length {C.n}")
    if x not in C.words:
        raise NotACodeword(f"{bits_to_str(x, C.n)} is not in the code")
    return x


def witnessed_by(words: Iterable[int], c: int, W: int) -> bool:
    """Raw-mask witness test: ``W`` separates ``c`` from every other word."""
    for y in words:
        if y != c and not (c ^ y) & W:
            return False
    return True


def difference_family(words: Iterable[int], c: int) -> list[int]:
    return [c ^ y for y in words if y != c]


def is_witness(C: Code, c: Codeword | int, W: CoordSet | int) -> bool:
    x = _require_member(C, c)
    return witnessed_by(C.words, x, _mask(W))


def windows(n: int, w: int) -> list[int]:
    """All size-``w`` coordinate masks of ``[n]`` in lexicographic order."""
    return [members_to_mask(m) for m in combinations(range(1, n + 1), w)]


def unique_projections(words: Sequence[int], W: int) -> list[int]:
    """Words whose projection on ``W`` is shared with no other word."""
    seen: dict[int, int] = {}
    for x in words:
        p = x & W
        seen[p] = seen.get(p, 0) + 1
    return [x for x in words if seen[x & W] == 1]


# Above this many (window, word) pairs, witnesses are found per word by
# hitting-set search instead of sweeping every window.
SWEEP_LIMIT = 2_000_000


def _sweep_choice(words: list[int], n: int, size: int) -> dict[int, int]:
    choice: dict[int, int] = {}
    for W in windows(n, size):
        for x in unique_projections(words, W):
            choice.setdefault(x, W)
        if len(choice) == len(words):
            break
    return choice


def witness_choice(C: Code, w: int, stop_early: bool = True) -> dict[int, int | None]:
    """Lexicographically first witness of size ``min(w, n)`` for each word mask.

    Words with no such witness map to None. With ``stop_early`` the search for
    a per-word code stops at the first failing word (in lexicographic order).
    """
    if w < 0:
        raise ValueError("w must be non-negative")
    size = min(w, C.n)
    words = C.masks
    if comb(C.n, size) * len(words) <= SWEEP_LIMIT:
        found = _sweep_choice(words, C.n, size)
        return {x: found.get(x) for x in words}
    out: dict[int, int | None] = {}
    for x in words:
        out[x] = lex_first_hitting_set(difference_family(words, x), size, C.n)
        if out[x] is None and stop_early:
            break
    return out


def has_w_witness_property(C: Code, w: int) -> tuple[bool, dict[Codeword, CoordSet]]:
    """Decide whether every word of ``C`` has a witness of size at most ``w``.

    By superset closure this is the same as a witness of size exactly
    ``min(w, n)``. On success the map gives each word its lexicographically
    first witness of that size; on failure it is empty.
    """
    choice = witness_choice(C, w)
    if len(choice) < len(C) or any(W is None for W in choice.values()):
        return False, {}
    return True, {Codeword(C.n, x): CoordSet(C.n, W) for x, W in choice.items()}


def first_failure(C: Code, w: int) -> Codeword | None:
    """First word (lexicographically) without a witness of size <= ``w``."""
    for x, W in witness_choice(C, w).items():
        if W is None:
            return Codeword(C.n, x)
    return None


def translate(C: Code, x: Codeword | int) -> Code:
    if isinstance(x, Codeword) and x.n != C.n:
        raise LengthMismatch(f"translate length {x.n} != {C.n}")
    t = _bits(x)
    return Code(C.n, frozenset(y ^ t for y in C.words))


def permute_bits(x: int, perm: Sequence[int]) -> int:
    """Move bit ``i`` to bit ``perm[i]`` (0-based)."""
    out = 0
    for i, j in enumerate(perm):
        if x >> i & 1:
            out |= 1 << j
    return out


def _perm0(n: int, sigma: Sequence[int] | Mapping[int, int]) -> list[int]:
    if isinstance(sigma, Mapping):
        perm = [sigma[i] - 1 for i in range(1, n + 1)]
    else:
        perm = [s - 1 for s in sigma]
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of [n]")
    return perm


def permute(C: Code, sigma: Sequence[int] | Mapping[int, int]) -> Code:
    """Apply a coordinate permutation; ``sigma[i-1]`` is the image of coordinate ``i``."""
    if len(sigma) != C.n:
        raise LengthMismatch(f"permutation of size {len(sigma)} for length {C.n}")
    perm = _perm0(C.n, sigma)
    return Code(C.n, frozenset(permute_bits(y, perm) for y in C.words))


def permute_word(c: Codeword, sigma: Sequence[int] | Mapping[int, int]) -> Codeword:
    return Codeword(c.n, permute_bits(c.bits, _perm0(c.n, sigma)))


def permute_set(W: CoordSet, sigma: Sequence[int] | Mapping[int, int]) -> CoordSet:
    return CoordSet(W.n, permute_bits(W.mask, _perm0(W.n, sigma)))


def complement(C: Code) -> Code:
    return translate(C, full_mask(C.n))
