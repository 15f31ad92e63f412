import json
import subprocess
import sys
from pathlib import Path

import pytest

from worstfair.cli import main
from worstfair.games import ISGame, loads_game

TRIANGLE = str(Path(__file__).resolve().parent.parent / "instances" / "triangle.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_analyze_shapley(capsys):
    code, out, err = run(capsys, "analyze", TRIANGLE, "--baseline", "shapley", "--json")
    assert code == 0
    recs = records(out)
    game = next(r for r in recs if r["record"] == "game")
    assert game["shapley"] == ["3", "4", "5"]
    rg = next(r for r in recs if r["record"] == "reverse_greedy")
    assert tuple(rg["cover"]) in {(2, 0, 10), (0, 2, 10)}
    assert rg["order"][0] == "C"
    measures = {r["cover_of"]: r for r in recs if r["record"] == "measure"}
    assert measures["RG"]["baseline"] == "shapley"
    assert "Shapley value: (3, 4, 5)" in err


def test_analyze_human(capsys):
    code, out, _ = run(capsys, "analyze", TRIANGLE)
    assert code == 0
    assert "ReverseGreedy cover: (2, 0, 10)" in out


def test_exact_uniform(capsys):
    code, out, _ = run(capsys, "exact", TRIANGLE, "--json", "--eta", "0.9")
    assert code == 0
    recs = records(out)
    ex = next(r for r in recs if r["record"] == "exact")
    assert (ex["covers"], ex["extremal"]) == (57, 6)
    assert abs(ex["fair"] - 0.934873) <= 1e-3
    assert {tuple(c) for c in ex["argmax"]} == {(2, 0, 10), (0, 2, 10)}
    assert next(r for r in recs if r["record"] == "decision")["answer"] is True


def test_exact_shapley_human(capsys):
    code, out, _ = run(capsys, "exact", TRIANGLE, "--baseline", "shapley", "--eta", "1.0")
    assert code == 0
    assert "57 covers, 6 extremal" in out
    assert "argmax (4, 8, 0)" in out
    assert "NO" in out


def test_exact_baseline_file(capsys, tmp_path):
    base = tmp_path / "q.json"
    base.write_text(json.dumps({"A": 3, "B": 4, "C": 5}))
    code, out, _ = run(capsys, "exact", TRIANGLE, "--baseline", str(base), "--json")
    assert code == 0
    ex = next(r for r in records(out) if r["record"] == "exact")
    assert ex["argmax"] == [[4, 8, 0]]


def test_bad_baseline_file(capsys, tmp_path):
    base = tmp_path / "q.json"
    base.write_text("[1, 0, 1]")
    assert run(capsys, "exact", TRIANGLE, "--baseline", str(base))[0] == 2
    assert run(capsys, "exact", TRIANGLE, "--baseline", str(tmp_path / "missing"))[0] == 2


def test_exact_threads(capsys):
    _, one, _ = run(capsys, "exact", TRIANGLE, "--json")
    _, two, _ = run(capsys, "exact", TRIANGLE, "--json", "--threads", "2")
    assert one == two


def test_caps_exit_3(capsys):
    code, _, err = run(capsys, "exact", TRIANGLE, "--max-total", "10")
    assert code == 3
    assert "--max-total" in err


def test_missing_file_exit_2(capsys):
    assert run(capsys, "analyze", "/nonexistent/game.json")[0] == 2


def test_corrupted_file_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "is", "players": ["A", "B"], "edges": [["A", "Z", 1]]')
    assert run(capsys, "verify", str(bad))[0] == 2
    bad.write_text('{"type": "is", "players": ["A", "B"], "edges": [["A", "Z", 1]]}')
    assert run(capsys, "analyze", str(bad))[0] == 2


def test_nonpositive_lambda_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", TRIANGLE, "--lambda", "0"])
    assert exc.value.code == 2


def test_verify_triangle(capsys):
    code, out, _ = run(capsys, "verify", TRIANGLE, "--lambdas", "0.5,1,2", "--json", "--trials", "200")
    assert code == 0
    recs = records(out)
    assert recs and all(r["pass"] for r in recs)
    assert {r["instance"] for r in recs} >= {TRIANGLE, "information"}


def test_verify_random_small(capsys):
    code, out, _ = run(capsys, "verify", "--random", "--n", "4", "--count", "5", "--seed", "7", "--trials", "50")
    assert code == 0
    assert "over 5 instance(s)" in out


def test_verify_needs_input(capsys):
    assert run(capsys, "verify")[0] == 2


def test_gen_deterministic_and_loadable(capsys):
    _, a, _ = run(capsys, "gen", "--n", "3", "--p", "1.0", "--wmax", "6", "--seed", "1")
    _, b, _ = run(capsys, "gen", "--n", "3", "--p", "1.0", "--wmax", "6", "--seed", "1")
    assert a == b
    g = loads_game(a)
    assert isinstance(g, ISGame) and g.n == 3 and len(g.edges) == 3
    _, c, _ = run(capsys, "gen", "--n", "2", "--p", "1.0", "--seed", "3")
    assert len(loads_game(c).edges) == 1


def test_gen_round_trip_through_verify(capsys, tmp_path):
    _, text, _ = run(capsys, "gen", "--n", "4", "--p", "0.7", "--wmax", "3", "--seed", "9")
    path = tmp_path / "g.json"
    path.write_text(text)
    assert run(capsys, "verify", str(path), "--trials", "20")[0] == 0


def test_gen_invalid(capsys):
    assert run(capsys, "gen", "--n", "1")[0] == 2
    assert run(capsys, "gen", "--n", "3", "--p", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "worstfair", "exact", TRIANGLE], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "57 covers, 6 extremal, Fair=0.934940" in proc.stdout
