import itertools
import math

import numpy as np
import pytest

from fsgraphs import catalog
from fsgraphs.experiments import (GENERATOR, ExperimentConfig, biconnectivity_incidence, bn_campaign,
                                  check_wilsonian, degree_band, degree_band_incidence, read_csv,
                                  reversal_campaign, run_random_campaign, run_random_exchange_trial,
                                  sample_gnp, summarize, trial_seeds, write_csv, write_jsonl)
from fsgraphs.graph import Graph, family


def test_gnp_extremes():
    assert len(sample_gnp(12, 0.0, 1).edges) == 0
    assert len(sample_gnp(12, 1.0, 1).edges) == 66
    with pytest.raises(ValueError):
        sample_gnp(5, 1.5, 0)


def test_gnp_reproducible():
    assert sample_gnp(40, 0.3, 7) == sample_gnp(40, 0.3, 7)
    assert sample_gnp(40, 0.3, 7) != sample_gnp(40, 0.3, 8)
    assert "Philox" in GENERATOR


def test_gnp_edge_count_within_four_sigma():
    n, p = 200, 0.1
    N = n * (n - 1) // 2
    mean, sd = N * p, math.sqrt(N * p * (1 - p))
    for seed in range(100):
        m = len(sample_gnp(n, p, seed).edges)
        assert abs(m - mean) <= 4 * sd


def test_trial_seeds():
    s = trial_seeds(3, 5)
    assert len(set(s)) == 5 and s == trial_seeds(3, 5)
    assert trial_seeds(3, 2) == s[:2]


def test_check_wilsonian_examples():
    assert check_wilsonian(family("path", 4)) == (False, "biconnected")
    assert check_wilsonian(Graph(2, [(0, 1)])) == (False, "biconnected")
    assert check_wilsonian(family("grid", 9)) == (False, "non-bipartite")
    assert check_wilsonian(family("cycle", 5)) == (False, "cycle")
    assert check_wilsonian(family("theta", 7, (1, 2, 2))) == (False, "theta122")
    assert check_wilsonian(family("complete", 3)) == (True, None)
    assert check_wilsonian(family("bn", 7)) == (True, None)


def test_degree_band():
    # at n = 200, p = 0.5 the band holds with overwhelming probability
    assert degree_band_incidence(200, 0.5, range(500)) == 1.0
    assert not degree_band(family("star", 200), 0.5)
    assert not degree_band(Graph(10), 0.0)


def test_biconnectivity_incidence_dense():
    assert biconnectivity_incidence(60, 0.5, range(20)) == 1.0
    assert biconnectivity_incidence(60, 0.01, range(20)) == 0.0


def test_config_defaults():
    cfg = ExperimentConfig(n=100)
    assert cfg.p == cfg.q and cfg.hypothesis_holds()
    assert math.isclose(cfg.p * cfg.q, 10 * math.log(100) / 100)
    h = cfg.header()
    assert h["generator"] == GENERATOR and h["n"] == 100
    assert not ExperimentConfig(n=100, p=0.1, q=0.1).hypothesis_holds()
    with pytest.raises(ValueError):
        ExperimentConfig(n=10, trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(n=10, p=2.0)


def test_random_trial_solves_and_replays():
    cfg = ExperimentConfig(n=30, trials=3, seed=5)
    recs = run_random_campaign(cfg)
    assert len(recs) == 3
    for r in recs:
        assert r.outcome in ("solved", "unsolved", "skipped")
        if r.outcome == "solved":
            assert r.condition_checks["replay_verified"]
            assert r.length == len(r.moves)
    s = summarize(recs)
    assert s["trials"] == 3 and 0 <= s["solved_fraction"] <= 1


def test_random_trial_reproducible():
    cfg = ExperimentConfig(n=25, seed=2)
    a = run_random_exchange_trial(cfg, seed=99)
    b = run_random_exchange_trial(cfg, seed=99)
    assert a.row() == b.row() and a.moves == b.moves


def test_sparse_trial_reports_cause():
    cfg = ExperimentConfig(n=20, p=0.15, q=0.15, seed=1)
    recs = [run_random_exchange_trial(cfg, seed=s) for s in range(5)]
    assert any(r.outcome != "solved" for r in recs)
    for r in recs:
        if r.outcome == "unsolved":
            assert r.cause.startswith("step")


def test_exact_campaigns():
    assert bn_campaign([6, 7]) == [{"n": 6, "diameter": 34}, {"n": 7, "diameter": 63}]
    rows = reversal_campaign(range(3, 7))
    for r in rows:
        assert r["distance"] == r["solver_length"] == r["binom"]


def test_csv_and_jsonl(tmp_path):
    rows = [{"n": 3, "diameter": 3}, {"n": 4, "diameter": 6}]
    p = tmp_path / "out.csv"
    write_csv(p, rows, {"generator": "exact"})
    text = p.read_text()
    assert text.startswith("# generator: exact\n")
    assert read_csv(p) == [{"n": "3", "diameter": "3"}, {"n": "4", "diameter": "6"}]
    j = tmp_path / "out.jsonl"
    write_jsonl(j, rows, {"seed": 1})
    lines = j.read_text().splitlines()
    assert lines[0] == '{"header": {"seed": 1}}' and len(lines) == 3
