"""Closed-form bounds on f(n, w) and a cache of exactly known values.

All bounds on codeword counts are exact integers: rational expressions are
floored and every upper bound is capped at ``2**n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Literal, Mapping

Status = Literal["exact", "lower-bound", "upper-bound"]
Key = tuple[int, int, "int | None"]

# (n, d, w) -> A(n, d, w); each value is the known maximum.
A_SEED: dict[tuple[int, int, int], int] = {
    (4, 4, 2): 2,
    (8, 4, 4): 14,
    (12, 4, 6): 132,
}


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"binomial({n}, {k}) out of range")
    return math.comb(n, k)


def ball_size(w: int, r: int) -> int:
    """Words of length ``w`` within distance ``r`` of a fixed word (i = 0 included)."""
    if not 0 <= r <= w:
        raise ValueError(f"ball_size({w}, {r}) out of range")
    return sum(math.comb(w, i) for i in range(r + 1))


def _check(n: int, w: int) -> None:
    if not 0 <= w <= n:
        raise ValueError(f"need 0 <= w <= n, got n={n}, w={w}")


def lower_sphere(n: int, w: int) -> int:
    _check(n, w)
    return math.comb(n, w)


def steiner_corollary(A: int, w: int, d: int) -> int:
    """Size of C_F for a constant-weight-``w`` family of minimum distance ``d``."""
    if d % 2 or d < 2:
        raise ValueError(f"d must be even and >= 2, got {d}")
    return A * ball_size(w, d // 2 - 1)


def two_part_size(n: int, w: int, t: int) -> int:
    return 2**w + math.comb(w, w - t) * (math.comb(n - w, t) - 1)


def two_part_range(n: int, w: int) -> range:
    """Values of t for which the sphere-D two-part construction is defined."""
    if 2 * w <= n:
        return range(0)
    # D = weight-(w - t) words must have weight >= 2w - n
    return range(1, n - w + 1)


def lower_candidates(
    n: int, w: int, a_table: Mapping[tuple[int, int, int], int] | None = None
) -> list[tuple[int, str]]:
    _check(n, w)
    out = [(math.comb(n, w), "sphere S_w(0)"), (2**w, "cube on w coordinates")]
    half = n // 2
    if w >= half:
        out.append((math.comb(n, half), "sphere S_{n/2}(0)"))
    table = dict(A_SEED)
    if a_table:
        table.update(a_table)
    for (an, ad, aw), A in sorted(table.items()):
        if an == n and aw == w and ad % 2 == 0 and 2 <= ad:
            out.append((steiner_corollary(A, w, ad), f"family A({an},{ad},{aw})>={A}"))
    for t in two_part_range(n, w):
        out.append((two_part_size(n, w, t), f"two-part t={t}"))
    return out


def lower_best_construction(
    n: int, w: int, a_table: Mapping[tuple[int, int, int], int] | None = None
) -> tuple[int, str]:
    """Largest construction size; ties keep the first-listed construction."""
    best = lower_candidates(n, w, a_table)[0]
    for cand in lower_candidates(n, w, a_table)[1:]:
        if cand[0] > best[0]:
            best = cand
    return best


def upper_simple(n: int, w: int) -> int:
    _check(n, w)
    return min(2**w * math.comb(n, w), 2**n)


def upper_improved(n: int, w: int) -> int:
    """floor(2 sqrt(w) C(n, w)), valid for 1 <= w <= n/2."""
    if not 1 <= w <= n // 2:
        raise ValueError(f"improved bound needs 1 <= w <= n/2, got n={n}, w={w}")
    c = math.comb(n, w)
    return min(math.isqrt(4 * w * c * c), 2**n)


@dataclass
class CacheEntry:
    value: int
    status: Status
    provenance: str = ""
    timestamp: float = 0.0
    version: str = ""

    def __post_init__(self) -> None:
        if self.value <= 0:
            raise ValueError("cached values must be positive")
        if self.status not in ("exact", "lower-bound", "upper-bound"):
            raise ValueError(f"bad status {self.status!r}")


def _rank(status: str) -> int:
    return 1 if status == "exact" else 0


@dataclass
class ExactValueCache:
    """Known values of f(n, w) (key ``k=None``) and f(n, w, k)."""

    entries: dict[Key, CacheEntry] = field(default_factory=dict)

    def put(self, n: int, w: int, k: int | None, entry: CacheEntry) -> bool:
        """Merge one entry: exact beats bounds, newer beats older. True if stored."""
        key = (n, w, k)
        old = self.entries.get(key)
        if old is not None:
            if _rank(old.status) > _rank(entry.status):
                return False
            if _rank(old.status) == _rank(entry.status) and old.timestamp > entry.timestamp:
                return False
        self.entries[key] = entry
        return True

    def merge(self, other: ExactValueCache) -> None:
        for (n, w, k), e in other.entries.items():
            self.put(n, w, k, e)

    def get(self, n: int, w: int, k: int | None = None) -> CacheEntry | None:
        return self.entries.get((n, w, k))

    def exact(self, n: int, w: int, k: int | None = None) -> int | None:
        e = self.get(n, w, k)
        return e.value if e is not None and e.status == "exact" else None

    def upper(self, n: int, w: int, k: int | None = None) -> int | None:
        e = self.get(n, w, k)
        return e.value if e is not None and e.status != "lower-bound" else None

    def lower(self, n: int, w: int, k: int | None = None) -> int | None:
        e = self.get(n, w, k)
        return e.value if e is not None and e.status != "upper-bound" else None

    def __iter__(self) -> Iterator[tuple[Key, CacheEntry]]:
        return iter(sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or -1)))

    def __len__(self) -> int:
        return len(self.entries)


def _f_upper_at(v: int, w: int, cache: ExactValueCache | None) -> int:
    base = min(2**v, 2**w * math.comb(v, w))
    if cache is not None:
        u = cache.upper(v, w)
        if u is not None:
            base = min(base, u)
    return base


def upper_monotone(n: int, w: int, cache: ExactValueCache | None = None) -> int:
    """Best of floor(C(n,w) F(v,w) / C(v,w)) over w <= v <= n.

    g(n, w) = f(n, w) / C(n, w) does not increase with n, so any upper bound
    F on f(v, w) transfers to length n. F is the cached value when known,
    else min(2^v, 2^w C(v, w)).
    """
    return _monotone(n, w, cache)[0]


def _monotone(n: int, w: int, cache: ExactValueCache | None) -> tuple[int, int]:
    _check(n, w)
    c = math.comb(n, w)
    best, best_v = None, n
    for v in range(w, n + 1):
        val = c * _f_upper_at(v, w, cache) // math.comb(v, w)
        if best is None or val < best:
            best, best_v = val, v
    return min(best, 2**n), best_v


def bassalygo_elias(n: int, w: int, cw: Mapping[int, tuple[int, int]]) -> tuple[int, int]:
    """Sandwich f(n, w) between max_k f(n,w,k) and min_k f(n,w,k) 2^n / C(n,k).

    ``cw`` maps k to (lower, upper) bounds on f(n, w, k).
    """
    if not cw:
        raise ValueError("need at least one constant-weight entry")
    lower = max(lo for lo, _ in cw.values())
    upper = min(Fraction(hi * 2**n, math.comb(n, k)) for k, (_, hi) in cw.items())
    return lower, min(math.floor(upper), 2**n)


def cw_exact_corollary(n: int, w: int, k: int) -> int | None:
    """f(n, w, k) when the sphere about 0 or about 1 is provably optimal."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k <= w <= n // 2:
        return math.comb(n, k)
    if n - k <= w <= n // 2:
        return math.comb(n, n - k)
    return None


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def asymptotic_exponent(omega: float) -> float:
    """Limit of log2 f(n, omega n) / n."""
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega {omega} outside [0, 1]")
    return binary_entropy(omega) if omega <= 0.5 else 1.0


def sphere_exponent(n: int, omega: float) -> float:
    """log2 C(n, floor(omega n)) / n, the lower-bound side of the exponent."""
    return math.log2(math.comb(n, math.floor(omega * n))) / n


@dataclass
class BoundReport:
    n: int
    w: int
    lower: list[tuple[int, str]]
    upper: list[tuple[int, str]]
    exact: int | None = None

    @property
    def best_lower(self) -> tuple[int, str]:
        return max(self.lower, key=lambda b: b[0])

    @property
    def best_upper(self) -> tuple[int, str]:
        return min(self.upper, key=lambda b: b[0])


def bounds_report(
    n: int,
    w: int,
    cache: ExactValueCache | None = None,
    a_table: Mapping[tuple[int, int, int], int] | None = None,
) -> BoundReport:
    _check(n, w)
    if n > 64:
        raise ValueError("n must be at most 64")
    lower = lower_candidates(n, w, a_table)
    upper = [(2**n, "whole space"), (upper_simple(n, w), "pigeonhole 2^w C(n,w)")]
    if 1 <= w <= n // 2:
        upper.append((upper_improved(n, w), "2 sqrt(w) C(n,w)"))
    mono, v = _monotone(n, w, cache)
    upper.append((mono, f"g monotone via v={v}"))

    exact = None
    if cache is not None:
        for (cn, cw_, ck), e in cache:
            if ck is None:
                # f grows with n and w
                if cn <= n and cw_ <= w and e.status != "upper-bound":
                    tag = "exact" if (cn, cw_) == (n, w) and e.status == "exact" else "monotone"
                    lower.append((e.value, f"cache {tag} f({cn},{cw_})"))
                if cn >= n and cw_ >= w and e.status != "lower-bound":
                    upper.append((min(e.value, 2**n), f"cache f({cn},{cw_})"))
            elif cn == n and cw_ == w and e.status != "upper-bound":
                lower.append((e.value, f"cache f({cn},{cw_},{ck})"))
        exact = cache.exact(n, w)
        cw = {}
        for k in range(n + 1):
            lo = cache.lower(n, w, k) or cw_exact_corollary(n, w, k)
            hi = cache.upper(n, w, k) or cw_exact_corollary(n, w, k)
            if lo is not None and hi is not None:
                cw[k] = (lo, hi)
        if cw:
            be_lo, be_hi = bassalygo_elias(n, w, cw)
            lower.append((be_lo, "Bassalygo-Elias"))
            upper.append((be_hi, "Bassalygo-Elias"))

    report = BoundReport(n, w, lower, upper, exact)
    lo, hi = report.best_lower[0], report.best_upper[0]
    assert lo <= hi, (n, w, lo, hi)
    if exact is not None:
        assert lo <= exact <= hi, (n, w, lo, exact, hi)
    return report
