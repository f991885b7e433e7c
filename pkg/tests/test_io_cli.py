import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from witnesscodes import Code
from witnesscodes.analysis import mean_stats
from witnesscodes.bounds import CacheEntry, ExactValueCache, bounds_report
from witnesscodes.cli import main
from witnesscodes.constructions import SetFamily, sphere, steiner_3_4_8
from witnesscodes.io import (
    CACHE_ENV,
    FormatError,
    bound_report_from_json,
    bound_report_json,
    cache_from_json,
    cache_json,
    format_code,
    format_family,
    load_cache,
    mean_stats_from_json,
    mean_stats_json,
    parse_code,
    parse_family,
    parse_rational,
    rational,
    read_code,
    read_family,
    save_cache,
)

from conftest import codes


@given(codes(max_n=10, max_size=30))
def test_code_file_round_trip(C):
    text = format_code(C)
    assert parse_code(text) == C
    assert format_code(parse_code(text)) == text


@given(st.integers(1, 9), st.data())
def test_block_file_round_trip(n, data):
    masks = data.draw(st.sets(st.integers(1, (1 << n) - 1), max_size=10))
    F = SetFamily.from_masks(n, sorted(masks))
    text = format_family(F)
    assert parse_family(text) == F
    assert format_family(parse_family(text)) == text


def test_comments_and_errors():
    assert parse_code("# header comment\nn 3\n# x\n101\n\n010\n").strings() == ["010", "101"]
    for bad in ["", "n x\n", "n 3\n10\n", "n 3\n102\n", "n 3\n101\n101\n", "n 70\n"]:
        with pytest.raises(FormatError):
            parse_code(bad)
    for bad in ["n 4\n1 5\n", "n 4\n1 1\n", "n 4\n1 2\n2 1\n", "n 4\na\n"]:
        with pytest.raises(FormatError):
            parse_family(bad)


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_rational(rational(q)) == q
    assert all(isinstance(s, str) for s in rational(q))


def test_json_round_trips():
    r = bounds_report(9, 7)
    back = bound_report_from_json(json.loads(json.dumps(bound_report_json(r))))
    assert back == r
    m = mean_stats(sphere(5, 2), 2)
    assert mean_stats_from_json(json.loads(json.dumps(mean_stats_json(m)))) == m
    assert mean_stats_json(m)["gamma"] == rational(Fraction(m.gamma))


def test_cache_persistence_merges(tmp_path):
    path = tmp_path / "cache.json"
    a = ExactValueCache()
    a.put(4, 2, None, CacheEntry(8, "exact", "solver", 2.0, "0.1.0"))
    a.put(5, 2, 2, CacheEntry(10, "exact", "solver", 2.0, "0.1.0"))
    save_cache(path, a)
    b = ExactValueCache()
    b.put(4, 2, None, CacheEntry(7, "lower-bound", "stale", 9.0))
    b.put(6, 3, None, CacheEntry(24, "lower-bound", "probe", 3.0))
    save_cache(path, b)
    merged = load_cache(path)
    assert merged.exact(4, 2) == 8 and merged.lower(6, 3) == 24 and merged.exact(5, 2, 2) == 10
    assert cache_json(cache_from_json(cache_json(merged))) == cache_json(merged)
    assert not list(tmp_path.glob("*.tmp"))


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_verify_exit_codes(tmp_path, capsys):
    good = write(tmp_path, "s.txt", format_code(sphere(4, 2)))
    code, out, _ = run(["verify", "--code", good, "--w", 2], capsys)
    assert code == 0 and "1100 {1,2}" in out
    bad = write(tmp_path, "b.txt", "n 3\n100\n010\n001\n000\n")
    code, out, _ = run(["verify", "--code", bad, "--w", 2], capsys)
    assert code == 1 and "000" in out
    empty = write(tmp_path, "e.txt", "n 3\n")
    assert run(["verify", "--code", empty, "--w", 0], capsys)[0] == 0
    broken = write(tmp_path, "x.txt", "n 3\n1x0\n")
    code, _, err = run(["verify", "--code", broken, "--w", 1], capsys)
    assert code == 2 and "line 2" in err
    assert run(["verify", "--code", tmp_path / "missing.txt", "--w", 1], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--w", "1"])
    assert exc.value.code == 2


def test_verify_uniform(tmp_path, capsys):
    path = write(tmp_path, "c.txt", "n 4\n0000\n1100\n1010\n")
    code, out, _ = run(["verify", "--code", path, "--w", 2, "--uniform"], capsys)
    assert code == 0 and "{1,2}" in out
    assert run(["verify", "--code", path, "--w", 1, "--uniform"], capsys)[0] == 1


def test_min_witness_and_stats(tmp_path, capsys):
    path = write(tmp_path, "b.txt", "n 3\n100\n010\n001\n000\n")
    code, out, _ = run(["min-witness", "--code", path], capsys)
    assert code == 0 and "000 {1,2,3} 3" in out and "parameter 3" in out
    code, out, _ = run(["min-witness", "--code", path, "--word", 2, "--greedy"], capsys)
    assert out.strip() == "001 {3} 1"
    assert run(["min-witness", "--code", path, "--word", 9], capsys)[0] == 2
    code, out, _ = run(["stats", "--code", path, "--w", 1], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["gamma"] == ["1", "1"] and doc["size"] == 4


def test_construct_outputs_pass_verify(tmp_path, capsys):
    blocks = write(tmp_path, "f.txt", "n 4\n1 2\n3 4\n")
    cases = [
        (["sphere", "--n", 6, "--k", 3], 3),
        (["cube", "--n", 5, "--window", "1,3,4"], 3),
        (["family", "--blocks", blocks], 2),
        (["steiner348", "--as-code"], 4),
        (["twopart", "--n", 9, "--w", 7, "--t", 1], 7),
        (["cwsearch", "--n", 8, "--d", 4, "--w", 4, "--seed", 1, "--as-code"], 4),
    ]
    for i, (argv, w) in enumerate(cases):
        out = tmp_path / f"c{i}.txt"
        assert run(["construct", *argv, "--out", out], capsys)[0] == 0
        assert run(["verify", "--code", out, "--w", w], capsys)[0] == 0
    assert len(read_code(tmp_path / "c4.txt")) == 135
    assert len(read_code(tmp_path / "c2.txt")) == 6


def test_construct_block_files(tmp_path, capsys):
    code, out, _ = run(["construct", "steiner348"], capsys)
    assert code == 0 and parse_family(out) == steiner_3_4_8()
    path = tmp_path / "g.txt"
    run(["construct", "steiner5612", "--out", path], capsys)
    assert len(read_family(path)) == 132
    assert run(["construct", "sphere", "--n", 4], capsys)[0] == 2
    assert run(["construct", "twopart", "--n", 9, "--w", 7, "--t", 3], capsys)[0] == 2


def test_bounds_with_cache(tmp_path, capsys):
    path = tmp_path / "cache.json"
    cache = ExactValueCache()
    cache.put(4, 2, None, CacheEntry(8, "exact", "solver"))
    save_cache(path, cache)
    code, out, _ = run(["bounds", "--n", 10, "--w", 2, "--cache", path], capsys)
    assert code == 0
    assert json.loads(out)["best_upper"]["value"] == str(45 * 8 // 6)
    code, out, _ = run(["bounds", "--n", 9, "--w", 7], capsys)
    assert json.loads(out)["best_lower"] == {"value": "135", "provenance": "two-part t=1"}


def test_solve_writes_cache(tmp_path, capsys, monkeypatch):
    path = tmp_path / "cache.json"
    monkeypatch.setenv(CACHE_ENV, str(path))
    code, out, _ = run(["solve", "--n", 4, "--w", 2], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "exact" and doc["value"] == "8"
    assert load_cache(path).exact(4, 2) == 8
    code, out, _ = run(["solve", "--n", 6, "--w", 3, "--time-limit", 0.5], capsys)
    assert code == 0 and json.loads(out)["status"] == "lower-bound"
    code, out, _ = run(["solve", "--n", 5, "--w", 2, "--k", 2], capsys)
    assert json.loads(out)["value"] == "10"
    cached = load_cache(path)
    assert cached.exact(4, 2) == 8 and cached.lower(6, 3) is not None and cached.exact(5, 2, 2) == 10
    code, out, _ = run(["audit"], capsys)
    assert code == 0
    code, out, _ = run(["cache"], capsys)
    assert "4,2" in json.loads(out)["entries"]


def test_probe_command(capsys):
    code, out, _ = run(["probe", "--w", 1], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["equals_sphere"] is True and doc["implied"]["5"] == ["5", "5"]


def test_console_entry_point(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text(format_code(Code.from_strings(["100", "010", "001", "000"])))
    proc = subprocess.run(
        [sys.executable, "-m", "witnesscodes.cli", "verify", "--code", str(path), "--w", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and proc.stdout.startswith("FAIL 000")
