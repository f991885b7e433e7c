"""Minimum hitting sets over small set families packed as int masks.

A witness for ``c`` in ``C`` is exactly a hitting set of the difference
supports ``{c ^ c' : c' in C, c' != c}``; a uniform witness hits every
pairwise difference. Both reduce to the routines here.
"""

from __future__ import annotations

from typing import Iterable


def minimal_sets(sets: Iterable[int]) -> list[int]:
    """Drop duplicates and supersets; whatever hits the rest hits those too."""
    uniq = sorted(set(sets), key=lambda s: (s.bit_count(), s))
    if len(uniq) > 400:
        return uniq
    kept: list[int] = []
    for s in uniq:
        if not any(k & s == k for k in kept):
            kept.append(s)
    return kept


def _packing_bound(sets: list[int]) -> int:
    # Pairwise-disjoint sets each need their own element.
    used = 0
    count = 0
    for s in sorted(sets, key=int.bit_count):
        if not s & used:
            used |= s
            count += 1
    return count


def greedy_hitting_set(sets: Iterable[int]) -> int:
    """Repeatedly take the element hitting the most unhit sets (ties: smallest)."""
    unhit = [s for s in sets]
    if any(s == 0 for s in unhit):
        raise ValueError("empty set cannot be hit")
    chosen = 0
    while unhit:
        union = 0
        for s in unhit:
            union |= s
        best_i, best_count = -1, -1
        i = 0
        while union >> i:
            if union >> i & 1:
                bit = 1 << i
                cnt = sum(1 for s in unhit if s & bit)
                if cnt > best_count:
                    best_i, best_count = i, cnt
            i += 1
        bit = 1 << best_i
        chosen |= bit
        unhit = [s for s in unhit if not s & bit]
    return chosen


def _min_size(sets: list[int], limit: int) -> int | None:
    """Smallest hitting-set size not exceeding ``limit``, or None."""
    best = limit + 1

    def search(unhit: list[int], depth: int) -> None:
        nonlocal best
        if not unhit:
            best = min(best, depth)
            return
        if depth + _packing_bound(unhit) >= best:
            return
        pivot = min(unhit, key=lambda s: (s.bit_count(), s))
        x = pivot
        while x:
            bit = x & -x
            x ^= bit
            search([s for s in unhit if not s & bit], depth + 1)
            if depth + 1 >= best:
                return

    search(sets, 0)
    return best if best <= limit else None


def lex_first_hitting_set(sets: Iterable[int], k: int, n: int) -> int | None:
    """Lexicographically first ``k``-subset of ``range(n)`` hitting every set.

    Subsets compare by their ascending element lists. None if there is none.
    """
    family = minimal_sets(sets)
    if family and family[0] == 0:
        return None
    if k > n:
        return None
    if family and _min_size(family, k) is None:
        return None

    def search(i: int, chosen: int, budget: int, unhit: list[int]) -> int | None:
        if budget == 0:
            return chosen if not unhit else None
        if n - i < budget:
            return None
        if not unhit:
            # pad with the smallest remaining coordinates
            return chosen | (((1 << budget) - 1) << i)
        restricted = [s >> i for s in unhit]
        if any(r == 0 for r in restricted) or _packing_bound(restricted) > budget:
            return None
        bit = 1 << i
        found = search(i + 1, chosen | bit, budget - 1, [s for s in unhit if not s & bit])
        if found is not None:
            return found
        return search(i + 1, chosen, budget, unhit)

    return search(0, 0, k, family)


def min_hitting_set(sets: Iterable[int], bound: int | None = None) -> int | None:
    """Exact minimum hitting set, lexicographically smallest among the minima.

    Returns None when no hitting set of size <= ``bound`` exists (or when a
    set is empty, which nothing hits).
    """
    family = minimal_sets(sets)
    if family and family[0] == 0:
        return None
    if not family:
        return 0
    upper = greedy_hitting_set(family).bit_count()
    limit = upper if bound is None else min(upper, bound)
    k = _min_size(family, limit)
    if k is None:
        return None
    return lex_first_hitting_set(family, k, max(s.bit_length() for s in family))
