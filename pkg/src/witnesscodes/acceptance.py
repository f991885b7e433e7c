"""End-to-end checks of the library's headline numbers.

Each check returns ``(passed, detail)``; :func:`run_all` times them against
their budgets. Used by ``witnesscodes reproduce`` and the test suite.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import gamma_plus_exhaustive, mean_stats
from .bounds import (
    CacheEntry,
    ExactValueCache,
    binary_entropy,
    bounds_report,
    sphere_exponent,
    upper_improved,
    upper_simple,
)
from .constructions import (
    SetFamily,
    design_check,
    from_family,
    sphere,
    sphere_translate_signature,
    steiner_3_4_8,
    steiner_5_6_12,
    two_part_sphere,
)
from .core import Code, has_w_witness_property, translate
from .solver import f_cw_exact, f_exact, monotonicity_audit

Outcome = tuple[bool, str]


def _min_pair_distance(F: SetFamily) -> int:
    masks = F.masks
    return min((a ^ b).bit_count() for i, a in enumerate(masks) for b in masks[i + 1 :])


def steiner_generation() -> Outcome:
    F, G = steiner_3_4_8(), steiner_5_6_12()
    dF, dG = design_check(F, 3), design_check(G, 5)
    ok = (
        len(F) == 14
        and len(G) == 132
        and dF.is_steiner
        and dG.is_steiner
        and _min_pair_distance(F) == 4
        and _min_pair_distance(G) == 4
    )
    return ok, f"S(3,4,8): {len(F)} blocks; S(5,6,12): {len(G)} blocks; min distances 4"


def family_cardinalities() -> Outcome:
    cases = [
        (SetFamily.from_members(4, [[1, 2], [3, 4]]), 2, 6),
        (steiner_3_4_8(), 4, 70),
        (steiner_5_6_12(), 6, 924),
    ]
    parts = []
    ok = True
    for F, w, expected in cases:
        C = from_family(F)
        good = len(C) == expected and has_w_witness_property(C, w)[0]
        ok &= good
        parts.append(f"{len(C)} (w={w})")
    return ok, "sizes " + ", ".join(parts)


def non_sphere_translate() -> Outcome:
    F = steiner_3_4_8()
    is_sph, hist = sphere_translate_signature(from_family(F), 4)
    from .analysis import witnessed_codewords

    C = from_family(F)
    on_blocks = all(len(witnessed_codewords(C, b)) == 5 for b in F.blocks)
    ok = not is_sph and on_blocks and hist[5] >= 14
    S = sphere(8, 4)
    rng = random.Random(8)
    shifts = [0, 0xFF] + [rng.randrange(256) for _ in range(30)]
    for x in shifts:
        s_ok, s_hist = sphere_translate_signature(translate(S, x), 4)
        ok &= s_ok and set(s_hist) == {2}
    return ok, f"C_F histogram {dict(sorted(hist.items()))}; sphere(8,4) and {len(shifts)} translates all-2"


def two_part_check() -> Outcome:
    C = two_part_sphere(9, 7, 1)
    size = len(C)
    formula = 2**7 + math.comb(7, 6) * (math.comb(2, 1) - 1)
    rival = max(math.comb(9, 7), math.comb(9, 4), 2**7)
    ok = (
        size == formula == 135
        and has_w_witness_property(C, 7)[0]
        and size > rival == 128
        and size <= 2**7 + math.comb(9, 7)
    )
    return ok, f"|C|={size}, previous best {rival}, cap {2**7 + math.comb(9, 7)}"


def double_count(trials: int = 1000, seed: int = 2024) -> Outcome:
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, 12)
        size = rng.randint(0, min(40, 1 << n))
        C = Code(n, frozenset(rng.sample(range(1 << n), size)))
        w = rng.randint(0, n)
        m = mean_stats(C, w)
        by_word = sum(m.witness_counts.values())
        by_window = sum(m.window_counts.values())
        if by_word != by_window:
            return False, f"pair counts differ for {C}, w={w}"
        if len(C) * m.mean_witness_count != math.comb(n, w) * m.gamma:
            return False, f"mean identity fails for {C}, w={w}"
        if size and Fraction(size, math.comb(n, w)) * m.mean_witness_count != m.gamma:
            return False, f"ratio form fails for {C}, w={w}"
    return True, f"{trials} random codes"


def solver_cross_validation() -> Outcome:
    f42 = None
    for n in range(1, 5):
        for w in range(1, n + 1):
            a = f_exact(n, w, strategy="enumeration")
            b = f_exact(n, w, strategy="branch-and-bound")
            if a.value != b.value or a.status != "exact" or b.status != "exact":
                return False, f"f({n},{w}): enumeration {a.value} vs branch-and-bound {b.value}"
            if (n, w) == (4, 2):
                f42 = a.value
    ok = f42 is not None and 6 <= f42 <= 16
    return ok, f"all n<=4 agree; f(4,2)={f42}"


def constant_weight() -> Outcome:
    got = {}
    for n, w, k in [(4, 2, 1), (5, 2, 2), (4, 2, 3)]:
        got[(n, w, k)] = f_cw_exact(n, w, k).value
    ok = got == {(4, 2, 1): 4, (5, 2, 2): 10, (4, 2, 3): 4}
    return ok, ", ".join(f"f{key}={v}" for key, v in got.items())


def theorem_invariants() -> Outcome:
    cache = ExactValueCache()
    for n, w in [(2, 1), (3, 1), (4, 1), (4, 2)]:
        r = f_exact(n, w)
        cache.put(n, w, None, CacheEntry(r.value, "exact", "acceptance"))
    report = monotonicity_audit(cache)
    for n in range(1, 17):
        for w in range(1, n + 1):
            b = bounds_report(n, w, cache)
            if b.best_lower[0] > b.best_upper[0]:
                return False, f"sandwich fails at ({n},{w})"
            if 2 * w <= n and upper_improved(n, w) > upper_simple(n, w):
                return False, f"improved bound worse than simple at ({n},{w})"
    return report.passed, f"{len(report.checks)} monotonicity checks; bounds grid n<=16"


def gamma_plus_suite() -> Outcome:
    vals = {}
    for n in range(1, 5):
        for w in range(0, n + 1):
            a, _ = gamma_plus_exhaustive(n, w, "all-codes")
            b, _ = gamma_plus_exhaustive(n, w, "w-witness-codes")
            if a != b:
                return False, f"gamma+({n},{w})={a} but gamma++={b}"
            vals[(n, w)] = a
    ok = vals[(3, 1)] >= vals[(4, 1)]
    return ok, f"gamma+ = gamma++ for n<=4; gamma+(3,1)={vals[(3, 1)]}, gamma+(4,1)={vals[(4, 1)]}"


def asymptotics() -> Outcome:
    h = binary_entropy(0.25)
    gaps = [abs(h - sphere_exponent(n, 0.25)) for n in (40, 80, 160)]
    ok = gaps[2] <= 0.05 and gaps[0] > gaps[1] > gaps[2]
    return ok, "gaps " + ", ".join(f"{g:.4f}" for g in gaps)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable[[], Outcome]
    budget: float  # seconds


CRITERIA = [
    Criterion(1, "Steiner generation", steiner_generation, 1.0),
    Criterion(2, "generic construction cardinalities", family_cardinalities, 60.0),
    Criterion(3, "non-sphere-translate", non_sphere_translate, 10.0),
    Criterion(4, "two-part construction", two_part_check, 1.0),
    Criterion(5, "double-count identity", double_count, 30.0),
    Criterion(6, "solver cross-validation", solver_cross_validation, 300.0),
    Criterion(7, "constant-weight corollary", constant_weight, 60.0),
    Criterion(8, "monotonicity and bound sandwich", theorem_invariants, 10.0),
    Criterion(9, "gamma+ suite", gamma_plus_suite, 300.0),
    Criterion(10, "asymptotics illustration", asymptotics, 1.0),
]


@dataclass(frozen=True)
class CriterionResult:
    criterion: Criterion
    passed: bool
    within_budget: bool
    elapsed: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        c = self.criterion
        mark = "PASS" if self.ok else "FAIL"
        budget = "" if self.within_budget else f" [over budget {c.budget:g}s]"
        return f"{mark}  {c.number:>2}. {c.title}: {self.detail} ({self.elapsed:.2f}s){budget}"


def run(c: Criterion) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = c.check()
    except AssertionError as exc:
        passed, detail = False, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    return CriterionResult(c, passed, elapsed < c.budget, elapsed, detail)


def run_all() -> list[CriterionResult]:
    return [run(c) for c in CRITERIA]
