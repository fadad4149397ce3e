from math import comb

from fsgraphs.fs import identity, replay
from fsgraphs.graph import Graph, family
from fsgraphs.kn import solve_kn, solve_kn_plan
from fsgraphs.oracle import distance

from conftest import random_config, random_graph


def test_reversal_on_path_is_binomial():
    for n in range(3, 10):
        rep = solve_kn(family("path", n), tuple(range(n - 1, -1, -1)), identity(n))
        assert rep.length == comb(n, 2) == rep.bound_budget


def test_identity_is_empty():
    rep = solve_kn(family("cycle", 5), identity(5), identity(5))
    assert rep.reachable and rep.length == 0


def test_two_triangles():
    Y = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    a = (1, 2, 0, 4, 5, 3)
    b = (0, 1, 2, 3, 4, 5)
    rep = solve_kn(Y, a, b)
    assert rep.reachable and rep.length <= 6
    X = family("complete", 6)
    assert replay(X, Y, a, rep.sequence.moves) == b
    assert rep.length >= distance(X, Y, a, b)
    # persons swapped across the two triangles cannot be fixed
    assert not solve_kn(Y, (3, 1, 2, 0, 4, 5), b).reachable


def test_random_instances_replay(rng):
    for _ in range(200):
        n = rng.randint(2, 9)
        Y = random_graph(n, rng.uniform(0.2, 0.8), rng)
        a, b = random_config(n, rng), random_config(n, rng)
        rep = solve_kn(Y, a, b)
        if rep.reachable:
            assert rep.length <= comb(n, 2)
            assert replay(family("complete", n), Y, a, rep.sequence.moves) == b


def test_plan_small_path():
    plan = solve_kn_plan(family("path", 3), (2, 1, 0), identity(3))
    assert len(plan.moves) <= 3
    if not plan.odd_length:
        assert all(tag in ("good", "bad") for _, _, tag in plan.pairs)


def test_plan_empty():
    plan = solve_kn_plan(family("cycle", 4), identity(4), identity(4))
    assert plan.moves == [] and plan.bad_count == 0


def test_plan_bad_pairs_bounded(rng):
    done = 0
    while done < 1000:
        Y = random_graph(7, rng.uniform(0.3, 0.8), rng)
        from fsgraphs.graph import is_connected
        if not is_connected(Y):
            continue
        plan = solve_kn_plan(Y, random_config(7, rng), random_config(7, rng))
        assert plan.bad_count <= 7
        for m1, m2, tag in plan.pairs:
            assert (tag == "good") == bool(set(m1) & set(m2))
        done += 1
