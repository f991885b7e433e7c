"""Text formats for codes and block families, JSON for results and the cache."""

from __future__ import annotations

import json
import os
import tempfile
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .analysis import MeanStats
from .bounds import BoundReport, CacheEntry, ExactValueCache
from .constructions import SetFamily
from .core import MAX_LENGTH, Code, Codeword, CoordSet, str_to_bits
from .solver import SolverResult

CACHE_ENV = "WITNESSCODES_CACHE"


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _header(lines: list[tuple[int, str]]) -> int:
    if not lines:
        raise FormatError("missing 'n <int>' header")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise FormatError(f"line {lineno}: expected 'n <int>', got {head!r}")
    n = int(parts[1])
    if not 1 <= n <= MAX_LENGTH:
        raise FormatError(f"line {lineno}: n={n} outside [1, {MAX_LENGTH}]")
    return n


def parse_code(text: str) -> Code:
    lines = _content_lines(text)
    n = _header(lines)
    words: set[int] = set()
    for lineno, line in lines[1:]:
        if len(line) != n or set(line) - {"0", "1"}:
            raise FormatError(f"line {lineno}: {line!r} is not a length-{n} binary word")
        x = str_to_bits(line)
        if x in words:
            raise FormatError(f"line {lineno}: duplicate word {line}")
        words.add(x)
    return Code(n, frozenset(words))


def format_code(C: Code) -> str:
    return "".join([f"n {C.n}\n"] + [s + "\n" for s in C.strings()])


def parse_family(text: str) -> SetFamily:
    lines = _content_lines(text)
    n = _header(lines)
    blocks: list[CoordSet] = []
    seen: set[int] = set()
    for lineno, line in lines[1:]:
        try:
            members = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer coordinate in {line!r}") from None
        if any(not 1 <= m <= n for m in members):
            raise FormatError(f"line {lineno}: coordinate outside [1, {n}]")
        if len(set(members)) != len(members):
            raise FormatError(f"line {lineno}: repeated coordinate")
        b = CoordSet.of(n, members)
        if b.mask in seen:
            raise FormatError(f"line {lineno}: duplicate block")
        seen.add(b.mask)
        blocks.append(b)
    return SetFamily(n, tuple(blocks))


def format_family(F: SetFamily) -> str:
    return "".join([f"n {F.n}\n"] + [" ".join(map(str, b.members)) + "\n" for b in F.blocks])


def read_code(path: str | os.PathLike) -> Code:
    return parse_code(Path(path).read_text())


def read_family(path: str | os.PathLike) -> SetFamily:
    return parse_family(Path(path).read_text())


def atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- JSON ----------------------------------------------------------------------


def rational(q: Fraction) -> list[str]:
    return [str(q.numerator), str(q.denominator)]


def parse_rational(pair: list[str]) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def bound_report_json(r: BoundReport) -> dict[str, Any]:
    return {
        "kind": "bounds",
        "n": r.n,
        "w": r.w,
        "lower": [{"value": str(v), "provenance": p} for v, p in r.lower],
        "upper": [{"value": str(v), "provenance": p} for v, p in r.upper],
        "best_lower": {"value": str(r.best_lower[0]), "provenance": r.best_lower[1]},
        "best_upper": {"value": str(r.best_upper[0]), "provenance": r.best_upper[1]},
        "exact": None if r.exact is None else str(r.exact),
    }


def bound_report_from_json(d: dict[str, Any]) -> BoundReport:
    return BoundReport(
        n=d["n"],
        w=d["w"],
        lower=[(int(b["value"]), b["provenance"]) for b in d["lower"]],
        upper=[(int(b["value"]), b["provenance"]) for b in d["upper"]],
        exact=None if d["exact"] is None else int(d["exact"]),
    )


def mean_stats_json(m: MeanStats) -> dict[str, Any]:
    return {
        "kind": "mean-stats",
        "n": m.n,
        "w": m.w,
        "size": m.size,
        "witness_counts": {str(c): k for c, k in m.witness_counts.items()},
        "window_counts": {" ".join(map(str, W.members)): k for W, k in m.window_counts.items()},
        "mean_witness_count": rational(m.mean_witness_count),
        "gamma": rational(m.gamma),
    }


def mean_stats_from_json(d: dict[str, Any]) -> MeanStats:
    n = d["n"]
    return MeanStats(
        n=n,
        w=d["w"],
        size=d["size"],
        witness_counts={Codeword.from_str(s): k for s, k in d["witness_counts"].items()},
        window_counts={CoordSet.of(n, map(int, s.split())): k for s, k in d["window_counts"].items()},
        mean_witness_count=parse_rational(d["mean_witness_count"]),
        gamma=parse_rational(d["gamma"]),
    )


def solver_result_json(r: SolverResult) -> dict[str, Any]:
    return {
        "kind": "solver-result",
        "n": r.n,
        "w": r.w,
        "k": r.k,
        "value": str(r.value),
        "status": r.status,
        "certificate": r.certificate.strings(),
        "nodes": r.nodes,
        "elapsed": r.elapsed,
        "strategy": r.strategy,
        "deterministic": r.deterministic,
    }


def solver_result_from_json(d: dict[str, Any]) -> SolverResult:
    n = d["n"]
    return SolverResult(
        n=n,
        w=d["w"],
        k=d["k"],
        value=int(d["value"]),
        status=d["status"],
        certificate=Code(n, frozenset(str_to_bits(s) for s in d["certificate"])),
        nodes=d["nodes"],
        elapsed=d["elapsed"],
        strategy=d["strategy"],
        deterministic=d["deterministic"],
    )


def cache_key(n: int, w: int, k: int | None) -> str:
    return f"{n},{w}" if k is None else f"{n},{w},{k}"


def parse_cache_key(key: str) -> tuple[int, int, int | None]:
    parts = [int(p) for p in key.split(",")]
    if len(parts) == 2:
        return parts[0], parts[1], None
    if len(parts) == 3:
        return parts[0], parts[1], parts[2]
    raise FormatError(f"bad cache key {key!r}")


def cache_json(cache: ExactValueCache) -> dict[str, Any]:
    return {
        "kind": "exact-value-cache",
        "entries": {
            cache_key(n, w, k): {
                "value": str(e.value),
                "status": e.status,
                "provenance": e.provenance,
                "version": e.version,
                "timestamp": e.timestamp,
            }
            for (n, w, k), e in cache
        },
    }


def cache_from_json(d: dict[str, Any]) -> ExactValueCache:
    cache = ExactValueCache()
    for key, e in d.get("entries", {}).items():
        n, w, k = parse_cache_key(key)
        cache.put(
            n,
            w,
            k,
            CacheEntry(
                value=int(e["value"]),
                status=e["status"],
                provenance=e.get("provenance", ""),
                timestamp=float(e.get("timestamp", 0.0)),
                version=e.get("version", ""),
            ),
        )
    return cache


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_cache(path: str | os.PathLike | None) -> ExactValueCache:
    if path is None or not Path(path).exists():
        return ExactValueCache()
    try:
        return cache_from_json(json.loads(Path(path).read_text()))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"unreadable cache {path}: {exc}") from exc


def save_cache(path: str | os.PathLike, cache: ExactValueCache) -> None:
    """Merge ``cache`` into whatever is on disk and write atomically."""
    merged = load_cache(path)
    merged.merge(cache)
    atomic_write(path, dumps(cache_json(merged)))


def record_result(cache: ExactValueCache, r: SolverResult, provenance: str | None = None) -> None:
    status = "exact" if r.status == "exact" else "lower-bound"
    cache.put(
        r.n,
        r.w,
        r.k,
        CacheEntry(
            value=r.value,
            status=status,
            provenance=provenance or f"solver {r.strategy}",
            timestamp=time.time(),
            version=__version__,
        ),
    )

