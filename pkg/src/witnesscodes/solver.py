"""Exact values of f(n, w) and f(n, w, k) for small lengths.

Two independent routes: brute-force enumeration of every candidate subset
(vectorized with numpy, tiny instances only) and an ordered branch-and-bound
that exploits heredity. The w-witness property is inherited by subcodes, so
once a partial code fails, none of its supersets can succeed.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Literal, Sequence

import numpy as np

from .bounds import ExactValueCache, bounds_report
from .core import Code, has_w_witness_property, permute_bits, windows, word_key

Status = Literal["exact", "lower-bound"]

MAX_EXACT_N = 6
MAX_ENUMERATION_CANDIDATES = 24


@dataclass
class Limits:
    time_limit: float | None = None
    node_limit: int | None = None


@dataclass
class SolverResult:
    n: int
    w: int
    k: int | None
    value: int
    status: Status
    certificate: Code
    nodes: int = 0
    elapsed: float = 0.0
    strategy: str = "branch-and-bound"
    deterministic: bool = True
    prunes: list[tuple[int, ...]] = field(default_factory=list, repr=False)


def verify_certificate(r: SolverResult) -> bool:
    cert = r.certificate
    if cert.n != r.n or len(cert) != r.value:
        return False
    if r.k is not None and any(x.bit_count() != r.k for x in cert.words):
        return False
    if r.status not in ("exact", "lower-bound"):
        return False
    return has_w_witness_property(cert, r.w)[0]


def candidate_order(n: int, k: int | None = None) -> list[int]:
    """Words sorted by (weight, lexicographic), optionally only weight ``k``."""
    words = range(1 << n) if k is None else windows(n, k)
    return sorted(words, key=lambda x: (x.bit_count(), word_key(x, n)))


def canonical_form(words: Sequence[int], n: int, translations: bool = True) -> tuple[int, ...]:
    """Minimum image of a code under coordinate permutations (and translations).

    A minimal image always contains 0 when translations are allowed, so only
    translations by codewords need to be tried.
    """
    shifts = list(words) if translations and words else [0]
    best: tuple[int, ...] | None = None
    for perm in permutations(range(n)):
        for s in shifts:
            image = tuple(sorted(permute_bits(y ^ s, perm) for y in words))
            if best is None or image < best:
                best = image
    return best if best is not None else ()


# -- brute force ---------------------------------------------------------------


def enumerate_max(n: int, w: int, cands: Sequence[int]) -> tuple[int, list[int]]:
    """Largest w-witness subset of ``cands`` by checking every subset.

    Subset ``s`` is the integer whose bit i selects ``cands[i]``. For each
    size-w window the candidates split into projection classes; a word is
    witnessed iff its class meets the subset in exactly one word.
    """
    m = len(cands)
    if m > MAX_ENUMERATION_CANDIDATES:
        raise ValueError(f"{m} candidates is too many to enumerate")
    subsets = np.arange(1 << m, dtype=np.uint32)
    wins = windows(n, min(w, n))
    covered = np.zeros(len(subsets), dtype=np.uint32)
    for W in wins:
        classes: dict[int, int] = {}
        for i, x in enumerate(cands):
            classes[x & W] = classes.get(x & W, 0) | (1 << i)
        for cls in classes.values():
            part = subsets & np.uint32(cls)
            covered |= np.where(np.bitwise_count(part) == 1, part, np.uint32(0))
    sizes = np.where(covered == subsets, np.bitwise_count(subsets), 0)
    best = int(np.argmax(sizes))
    return int(sizes[best]), [cands[i] for i in range(m) if best >> i & 1]


# -- branch and bound ----------------------------------------------------------


class _Stop(Exception):
    pass


class _Search:
    """Ordered add/skip search over a candidate list.

    ``cnt[(j << n) | (x & W_j)]`` counts code words in the projection class
    of ``x`` under window ``j``; a word is witnessed by window ``j`` exactly
    when its class count is 1. Each code word keeps the index of one such
    window, and adding a word only re-examines words whose stored window it
    breaks.
    """

    def __init__(
        self,
        n: int,
        w: int,
        limits: Limits,
        upper: int,
        best: list[int],
        record_prunes: int = 0,
        sub_value: int | None = None,
    ) -> None:
        self.n = n
        self.sub_value = sub_value
        self.wins = windows(n, min(w, n))
        self.cnt = [0] * (len(self.wins) << n)
        self.limits = limits
        self.upper = upper
        self.best = list(best)
        self.nodes = 0
        self.start = time.monotonic()
        self.timed_out = False
        self.record_prunes = record_prunes
        self.prunes: list[tuple[int, ...]] = []

    def can_add(self, code: list[int], wit: dict[int, int], y: int) -> bool:
        n, cnt, wins = self.n, self.cnt, self.wins
        if not any(cnt[(j << n) | (y & W)] == 0 for j, W in enumerate(wins)):
            return False
        for c in code:
            if not (c ^ y) & wins[wit[c]]:
                d = c ^ y
                if not any(d & W and cnt[(j << n) | (c & W)] == 1 for j, W in enumerate(wins)):
                    return False
        return True

    def push(self, code: list[int], wit: dict[int, int], y: int) -> list[tuple[int, int]]:
        """Add ``y`` (known addable); return the witness changes for ``pop``."""
        n, cnt, wins = self.n, self.cnt, self.wins
        for j, W in enumerate(wins):
            cnt[(j << n) | (y & W)] += 1
        changed = []
        for c in code:
            if not (c ^ y) & wins[wit[c]]:
                j = next(j for j, W in enumerate(wins) if cnt[(j << n) | (c & W)] == 1)
                changed.append((c, wit[c]))
                wit[c] = j
        wit[y] = next(j for j, W in enumerate(wins) if cnt[(j << n) | (y & W)] == 1)
        code.append(y)
        return changed

    def pop(self, code: list[int], wit: dict[int, int], changed: list[tuple[int, int]]) -> None:
        n, cnt, wins = self.n, self.cnt, self.wins
        y = code.pop()
        del wit[y]
        for j, W in enumerate(wins):
            cnt[(j << n) | (y & W)] -= 1
        for c, j in changed:
            wit[c] = j

    def split_bound(self, code: list[int], rest: list[int]) -> int:
        """Fixing one coordinate leaves a w-witness code of length n - 1 on each side."""
        F = self.sub_value
        total = len(code) + len(rest)
        if F is None:
            return total
        bound = total
        for i in range(self.n):
            ones = sum(1 for y in code if y >> i & 1) + sum(1 for y in rest if y >> i & 1)
            bound = min(bound, min(F, ones) + min(F, total - ones))
        return bound

    def tick(self) -> None:
        self.nodes += 1
        lim = self.limits
        if lim.node_limit is not None and self.nodes > lim.node_limit:
            self.timed_out = True
            raise _Stop
        if lim.time_limit is not None and self.nodes % 256 == 0:
            if time.monotonic() - self.start > lim.time_limit:
                self.timed_out = True
                raise _Stop

    def run(self, code: list[int], wit: dict[int, int], rest: list[int], min_dist: int) -> None:
        self.tick()
        if len(code) > len(self.best):
            self.best = list(code)
            if len(self.best) >= self.upper:
                raise _Stop
        if self.split_bound(code, rest) <= len(self.best):
            return
        for i, x in enumerate(rest):
            if len(code) + len(rest) - i <= len(self.best):
                return
            changed = self.push(code, wit, x)
            keep = []
            for y in rest[i + 1 :]:
                if min_dist and (x ^ y).bit_count() < min_dist:
                    continue
                if not self.can_add(code, wit, y):
                    if len(self.prunes) < self.record_prunes:
                        self.prunes.append(tuple(code + [y]))
                    continue
                keep.append(y)
            self.run(code, wit, keep, min_dist)
            self.pop(code, wit, changed)


def _roots(cands: list[int], symmetry: bool) -> list[tuple[list[int], int]]:
    """Starting codes for each subtree, with the minimum distance they enforce.

    With symmetry on, every nonempty code is isometric to one containing the
    first candidate, and (if it has two words) a closest pair can be moved to
    that candidate plus one fixed representative per distance.
    """
    if not symmetry or not cands:
        return [([], 0)]
    x0 = cands[0]
    reps: dict[int, int] = {}
    for y in cands[1:]:
        reps.setdefault((x0 ^ y).bit_count(), y)
    return [([x0, y], d) for d, y in sorted(reps.items())]


def _subtree(args) -> tuple[list[int], int, bool, list[tuple[int, ...]]]:
    n, w, cands, root, min_dist, limits, upper, seed_best, record, sub_value = args
    s = _Search(n, w, limits, upper, seed_best, record, sub_value)
    try:
        wit: dict[int, int] = {}
        code: list[int] = []
        for x in root:
            if not s.can_add(code, wit, x):
                return s.best, s.nodes, False, s.prunes
            s.push(code, wit, x)
        rest = [
            y
            for y in cands
            if y not in root
            and all((y ^ x).bit_count() >= min_dist for x in root)
            and s.can_add(code, wit, y)
        ]
        s.run(code, wit, rest, min_dist)
    except _Stop:
        pass
    return s.best, s.nodes, s.timed_out, s.prunes


def _branch_and_bound(
    n: int,
    w: int,
    cands: list[int],
    limits: Limits,
    upper: int,
    seed_best: list[int],
    symmetry: bool,
    workers: int,
    record_prunes: int,
    sub_value: int | None = None,
) -> tuple[list[int], int, bool, list[tuple[int, ...]]]:
    roots = _roots(cands, symmetry)
    best = list(seed_best)
    if symmetry and cands and len(best) < 1:
        best = [cands[0]]
    nodes = 0
    timed_out = False
    prunes: list[tuple[int, ...]] = []
    jobs = [(n, w, cands, r, d, limits, upper, best, record_prunes, sub_value) for r, d in roots]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_subtree, jobs))
        for found, cnt, out, pr in results:  # earliest subtree wins ties
            if len(found) > len(best):
                best = found
            nodes += cnt
            timed_out |= out
            prunes.extend(pr)
        return best, nodes, timed_out, prunes[:record_prunes]
    for job in jobs:
        job = job[:7] + (best,) + job[8:]
        found, cnt, out, pr = _subtree(job)
        best = found if len(found) > len(best) else best
        nodes += cnt
        timed_out |= out
        prunes.extend(pr)
        if timed_out or len(best) >= upper:
            break
    return best, nodes, timed_out, prunes[:record_prunes]


def _finish(
    n: int,
    w: int,
    k: int | None,
    best: list[int],
    status: Status,
    nodes: int,
    start: float,
    strategy: str,
    workers: int,
    prunes: list[tuple[int, ...]] | None = None,
) -> SolverResult:
    r = SolverResult(
        n=n,
        w=w,
        k=k,
        value=len(best),
        status=status,
        certificate=Code(n, frozenset(best)),
        nodes=nodes,
        elapsed=time.monotonic() - start,
        strategy=strategy,
        deterministic=workers <= 1,
        prunes=prunes or [],
    )
    assert verify_certificate(r), r
    return r


def f_exact(
    n: int,
    w: int,
    limits: Limits | None = None,
    *,
    strategy: Literal["auto", "enumeration", "branch-and-bound"] = "auto",
    symmetry: bool = True,
    use_bounds: bool = True,
    cache: ExactValueCache | None = None,
    workers: int = 1,
    record_prunes: int = 0,
) -> SolverResult:
    """Maximum size of a w-witness code of length ``n``.

    ``auto`` enumerates every code for n <= 4 and runs branch-and-bound for
    n = 5, 6. On hitting a limit the best code found is returned with status
    ``lower-bound``.
    """
    if not 1 <= w <= n:
        raise ValueError(f"need 1 <= w <= n, got n={n}, w={w}")
    if n > MAX_EXACT_N:
        raise ValueError(f"exact search is limited to n <= {MAX_EXACT_N}")
    limits = limits or Limits()
    start = time.monotonic()
    if strategy == "auto":
        strategy = "enumeration" if n <= 4 else "branch-and-bound"
    cands = candidate_order(n)
    if strategy == "enumeration":
        _, best = enumerate_max(n, w, cands)
        return _finish(n, w, None, best, "exact", 1 << len(cands), start, strategy, 1)
    upper = 1 << n
    sub_value = None
    if use_bounds:
        upper = bounds_report(n, w, cache).best_upper[0]
        sub_value = _shorter_exact(n - 1, min(w, n - 1), cache, limits)
        if sub_value is not None:
            upper = min(upper, 2 * sub_value)
    seed = sorted(windows(n, w), key=lambda x: word_key(x, n))  # the sphere is always feasible
    best, nodes, timed_out, prunes = _branch_and_bound(
        n, w, cands, limits, upper, seed, symmetry, workers, record_prunes, sub_value
    )
    status: Status = "lower-bound" if timed_out else "exact"
    return _finish(n, w, None, best, status, nodes, start, strategy, workers, prunes)


def _shorter_exact(n: int, w: int, cache: ExactValueCache | None, limits: Limits) -> int | None:
    """Exact f(n, w) from the cache or a recursive solve; None if not proven."""
    if n < 1 or w < 1:
        return None
    if cache is not None and cache.exact(n, w) is not None:
        return cache.exact(n, w)
    r = f_exact(n, w, limits, cache=cache)
    return r.value if r.status == "exact" else None


def f_cw_exact(
    n: int,
    w: int,
    k: int,
    limits: Limits | None = None,
    *,
    strategy: Literal["auto", "enumeration", "branch-and-bound"] = "auto",
    symmetry: bool = True,
    workers: int = 1,
) -> SolverResult:
    """Maximum size of a w-witness code whose words all have weight ``k``."""
    if not 0 <= k <= n or not 0 <= w <= n:
        raise ValueError(f"need 0 <= k, w <= n, got n={n}, w={w}, k={k}")
    limits = limits or Limits()
    start = time.monotonic()
    cands = candidate_order(n, k)
    if strategy == "auto":
        strategy = "enumeration" if len(cands) <= 12 else "branch-and-bound"
    if strategy == "enumeration":
        _, best = enumerate_max(n, w, cands)
        return _finish(n, w, k, best, "exact", 1 << len(cands), start, strategy, 1)
    # only permutations preserve weight; they act transitively on the candidates
    best, nodes, timed_out, _ = _branch_and_bound(
        n, w, cands, limits, len(cands), [], symmetry, workers, 0
    )
    status: Status = "lower-bound" if timed_out else "exact"
    return _finish(n, w, k, best, status, nodes, start, strategy, workers)


# -- experiments ---------------------------------------------------------------


@dataclass
class ProbeReport:
    w: int
    result: SolverResult
    sphere: int
    equals_sphere: bool | None
    # n -> (lower, upper) on f(n, w) implied by f(2w, w) and g-monotonicity
    implied: dict[int, tuple[int, int]]


def open_problem_probe(w: int, limits: Limits | None = None, n_max: int | None = None) -> ProbeReport:
    """Compute f(2w, w), compare with C(2w, w) and propagate to longer codes."""
    if w < 1:
        raise ValueError("w must be positive")
    if w > 3:
        raise ValueError("probe supports w <= 3")
    if w == 3 and limits is None:
        limits = Limits(time_limit=30.0)
    r = f_exact(2 * w, w, limits)
    sphere = math.comb(2 * w, w)
    equals = (r.value == sphere) if r.status == "exact" else (False if r.value > sphere else None)
    cache = ExactValueCache()
    if r.status == "exact":
        from .bounds import CacheEntry

        cache.put(2 * w, w, None, CacheEntry(r.value, "exact", "open_problem_probe"))
    implied = {}
    for n in range(2 * w, (n_max or 4 * w + 4) + 1):
        implied[n] = (
            max(math.comb(n, w), r.value if n == 2 * w else 0),
            bounds_report(n, w, cache).best_upper[0],
        )
    return ProbeReport(w, r, sphere, equals, implied)


class MonotonicityViolation(AssertionError):
    pass


@dataclass
class AuditReport:
    checks: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def monotonicity_audit(cache: ExactValueCache) -> AuditReport:
    """Check f up in n and w, and g = f / C(n, w) down in n, on exact entries."""
    exact = {(n, w): e.value for (n, w, k), e in cache.entries.items() if k is None and e.status == "exact"}
    checks: list[tuple[str, bool]] = []
    keys = sorted(exact)
    for a in keys:
        for b in keys:
            if a >= b:
                continue
            (n1, w1), (n2, w2) = a, b
            f1, f2 = exact[a], exact[b]
            if n1 <= n2 and w1 <= w2:
                checks.append((f"f({n1},{w1})={f1} <= f({n2},{w2})={f2}", f1 <= f2))
            if w1 == w2 and n1 < n2:
                g1 = Fraction(f1, math.comb(n1, w1))
                g2 = Fraction(f2, math.comb(n2, w2))
                checks.append((f"g({n1},{w1})={g1} >= g({n2},{w2})={g2}", g1 >= g2))
    report = AuditReport(checks)
    if not report.passed:
        bad = [d for d, ok in checks if not ok]
        raise MonotonicityViolation("; ".join(bad))
    return report


def min_distance(code: Sequence[int]) -> int:
    return min(((a ^ b).bit_count() for i, a in enumerate(code) for b in code[i + 1 :]), default=0)

