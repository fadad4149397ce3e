import json

import pytest

from fsgraphs.cli import (EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, UsageError, choose_strategy,
                          load_graph, main, parse_range)
from fsgraphs.experiments import read_csv
from fsgraphs.fs import format_config, format_moves, parse_moves, replay
from fsgraphs.graph import family, format_edge_list

from conftest import FIXTURES


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, errtext = capsys.readouterr()
    return code, out, errtext


def test_parse_range():
    assert parse_range("4..7") == [4, 5, 6, 7]
    assert parse_range("4-6") == [4, 5, 6]
    assert parse_range("4,6") == [4, 6]


def test_load_graph_specs(files):
    assert load_graph("theta:1,2,2").n == 7
    assert load_graph("grid:4").n == 16
    assert load_graph("star", 5) == family("star", 5)
    path = files("g.txt", format_edge_list(family("bn", 6)))
    assert load_graph(path) == family("bn", 6)
    with pytest.raises(UsageError):
        load_graph("cycle")


def test_choose_strategy():
    K = family("complete", 8)
    assert choose_strategy(K, family("path", 8)) == "kn"
    assert choose_strategy(family("star", 8), family("cycle", 8)) == "star"
    assert choose_strategy(family("cycle", 6), family("cycle", 6)) == "oracle"


def test_solve_golden(capsys, files):
    a = files("a.txt", "3 2 1 0\n")
    b = files("b.txt", "0 1 2 3\n")
    code, out, errtext = run(capsys, "solve", "--x", "complete", "--y", "path", "--n", "4",
                             "--from", a, "--to", b, "--json")
    assert code == EXIT_OK and "solver: kn" in errtext
    golden = json.loads((FIXTURES / "solve_k4_path_reversal.json").read_text())
    assert json.loads(out) == golden


def test_fifteen_puzzle_roundtrip(capsys, files, tmp_path):
    start = files("s.txt", format_config(tuple(range(16))))
    # blank runs round the top-left square twice, a 3-cycle of tiles
    walk = [0, 1, 5, 4, 0, 1, 5, 4, 0]
    scrambled = replay(family("star", 16), family("grid", 16), tuple(range(16)), list(zip(walk, walk[1:])))
    goal = files("g.txt", format_config(tuple(scrambled)))
    moves = str(tmp_path / "m.txt")
    code, _, errtext = run(capsys, "solve", "--x", "star", "--y", "grid:4", "--from", start, "--to", goal,
                           "--out", moves)
    assert code == EXIT_OK and "solver: star" in errtext
    code, out, _ = run(capsys, "verify", "--x", "star", "--y", "grid:4", "--start", start,
                       "--moves", moves, "--to", goal)
    assert code == EXIT_OK and out.split() == [str(v) for v in scrambled]
    # corrupt one move
    ms = parse_moves(open(moves).read())
    ms[min(3, len(ms) - 1)] = (10, 11)
    bad = files("bad.txt", format_moves(ms))
    code, out, _ = run(capsys, "verify", "--x", "star", "--y", "grid:4", "--start", start, "--moves", bad)
    assert code == EXIT_FAIL and "illegal move at index" in out


def test_unreachable_exit(capsys, files):
    a = files("a.txt", "0 1 2 3\n")
    b = files("b.txt", "0 2 1 3\n")
    code, out, _ = run(capsys, "solve", "--x", "star", "--y", "path", "--n", "4", "--from", a, "--to", b)
    assert code == EXIT_FAIL and out.strip() == "unreachable"
    code, out, _ = run(capsys, "classify", "--x", "star", "--y", "path", "--n", "4", "--a", a, "--b", b)
    assert code == EXIT_FAIL and out.startswith("different")


def test_usage_errors(capsys, files):
    a = files("a.txt", "0 1 2 3\n")
    assert run(capsys, "solve", "--x", "star", "--y", "theta:1,2,2", "--from", a, "--to", a)[0] == EXIT_USAGE
    assert run(capsys, "solve", "--x", "star", "--y", "path", "--n", "4", "--from", a, "--to",
               str(FIXTURES / "missing.txt"))[0] == EXIT_USAGE
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys, "solve", "--x", "star")[0] == EXIT_USAGE
    # degree condition violated for a forced strategy
    assert run(capsys, "solve", "--x", "cycle", "--y", "path", "--n", "4", "--from", a, "--to", a,
               "--strategy", "dense3")[0] == EXIT_USAGE


def test_budget_exit(capsys, files, monkeypatch):
    monkeypatch.setenv("FS_STATE_BUDGET", "100")
    from fsgraphs.oracle import state_graph
    state_graph.cache_clear()
    code, _, errtext = run(capsys, "oracle", "components", "--x", "star", "--y", "cycle", "--n", "6", "--no-plot")
    assert code == EXIT_BUDGET and "budget" in errtext
    state_graph.cache_clear()


def test_oracle_components_report(capsys, tmp_path):
    out = tmp_path / "comps.csv"
    code, _, errtext = run(capsys, "oracle", "components", "--x", "star", "--y", "theta:1,2,2", "--out", str(out))
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 6 and {r["size"] for r in rows} == {"840"} and {r["diameter"] for r in rows} == {"29"}
    assert (tmp_path / "comps.png").exists() and "figure:" in errtext


def test_oracle_sweep_and_distance(capsys, files):
    code, out, _ = run(capsys, "oracle", "sweep", "--x", "complete", "--y", "path", "--n-range", "4..7")
    assert code == EXIT_OK
    assert [ln.split(",")[1] for ln in out.strip().splitlines()[1:]] == ["6", "10", "15", "21"]
    a = files("a.txt", "0 1 2 3 4\n")
    b = files("b.txt", "4 3 2 1 0\n")
    code, out, _ = run(capsys, "oracle", "distance", "--x", "complete", "--y", "path", "--n", "5",
                       "--a", a, "--b", b)
    assert code == EXIT_OK and out.strip() == "10"


def test_experiment_reports(capsys, tmp_path):
    out = tmp_path / "bn.csv"
    code, _, _ = run(capsys, "experiment", "bn", "--n-range", "6..7", "--out", str(out))
    assert code == EXIT_OK and [r["diameter"] for r in read_csv(out)] == ["34", "63"]
    assert (tmp_path / "bn.png").exists()
    out = tmp_path / "rnd.csv"
    jl = tmp_path / "rnd.jsonl"
    code, text, _ = run(capsys, "experiment", "random", "--n", "20", "--trials", "2", "--out", str(out),
                        "--jsonl", str(jl), "--no-plot")
    assert code == EXIT_OK
    summary = json.loads(text)
    assert summary["summary"]["trials"] == 2
    assert out.read_text().startswith("# generator:")
    assert not (tmp_path / "rnd.png").exists()
    assert len(jl.read_text().splitlines()) == 3


def test_bench_writes_constants(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, text, _ = run(capsys, "bench", "--out", str(out), "--hosts", "20")
    assert code == EXIT_OK
    data = json.loads(out.read_text())
    assert data["measured"] and data["K_star"] > 0
