import math

import pytest

from fsgraphs import constants
from fsgraphs.dense import (DegreeConditionViolated, bangachev_condition, exchange_condition,
                            exchange_moves, find_witness, solve_dense_3swap, solve_dense_exchange,
                            three_swap_condition, transposition_plan)
from fsgraphs.fs import identity, occupants, replay
from fsgraphs.graph import Graph, family, is_connected, min_degree

from conftest import min_degree_graph, random_config


def three_swap_pair(n, rng):
    need = math.ceil(3 * n / 2)
    dx = rng.randint(need - (n - 1), n - 1)
    return min_degree_graph(n, dx, rng), min_degree_graph(n, max(need - dx, 1), rng)


def exchange_pair(n, rng, sparse_x=None):
    """Boundary instance min + 2 max = 2n; sparse_x pins which side is sparser."""
    while True:
        dmax = rng.randint(math.ceil(2 * n / 3), n - 1)
        dmin = max(2 * n - 2 * dmax, 1)
        X, Y = min_degree_graph(n, dmin, rng), min_degree_graph(n, dmax, rng)
        if is_connected(X) and is_connected(Y):
            break
    flip = rng.random() < 0.5 if sparse_x is None else not sparse_x
    return (Y, X) if flip else (X, Y)


def test_conditions():
    K = family("complete", 6)
    assert three_swap_condition(K, K) and exchange_condition(K, K) and bangachev_condition(K, K)
    C = family("cycle", 6)
    assert not three_swap_condition(C, C)
    assert not exchange_condition(family("path", 6), K)  # 1 + 10 < 12
    # min + 2 max >= 2n is weaker than 2 min + 3 max >= 3n only when min is large
    X = Graph(6, [e for e in K.edges if e not in {(0, 1), (2, 3), (4, 5)}])  # 4-regular
    assert exchange_condition(X, X) and bangachev_condition(X, X)


def test_transposition_plan_uses_x_edges(rng):
    X = family("cycle", 7)
    a, b = random_config(7, rng), random_config(7, rng)
    plan = transposition_plan(X, a, b)
    occ = occupants(a)
    pos = list(a)
    for p, q in plan:
        assert X.has_edge(p, q)
        pos[p], pos[q] = pos[q], pos[p]
    assert tuple(pos) == b


def test_find_witness():
    X = family("complete", 4)
    Y = family("path", 4)
    assert find_witness(X, Y, [0, 1, 2, 3], 0, 2) == 1
    assert find_witness(X, Y, [0, 1, 2, 3], 0, 3) is None


def test_dense3_random(rng):
    for n in range(6, 15):
        for _ in range(4):
            X, Y = three_swap_pair(n, rng)
            assert three_swap_condition(X, Y)
            a, b = random_config(n, rng), random_config(n, rng)
            rep = solve_dense_3swap(X, Y, a, b)
            assert rep.reachable and rep.solver_id == "dense3"
            assert replay(X, Y, a, rep.sequence.moves) == b
            assert rep.length <= 3 * n * (n - 1) // 2


def test_dense3_rejects_sparse():
    with pytest.raises(DegreeConditionViolated):
        solve_dense_3swap(family("cycle", 6), family("complete", 6), identity(6), identity(6))


def test_exchange_moves_is_a_pure_exchange(rng):
    for _ in range(30):
        n = rng.randint(7, 12)
        # the star subproblem argument runs on the side with the larger minimum degree
        X, Y = exchange_pair(n, rng, sparse_x=True)
        occ = list(random_config(n, rng))
        a, b = rng.sample(range(n), 2)
        if not X.has_edge(occ[a], occ[b]):
            continue
        seq = exchange_moves(X, Y, occ, a, b)
        assert seq is not None
        start = tuple(occupants(occ))
        end = occupants(replay(X, Y, start, seq))
        want = list(occ)
        want[a], want[b] = want[b], want[a]
        assert list(end) == want


def test_dense_exchange_random(rng):
    duals = set()
    for n in range(6, 15):
        for _ in range(4):
            X, Y = exchange_pair(n, rng)
            assert exchange_condition(X, Y)
            a, b = random_config(n, rng), random_config(n, rng)
            rep = solve_dense_exchange(X, Y, a, b)
            assert replay(X, Y, a, rep.sequence.moves) == b
            assert rep.length <= constants.get("K_dense") * n ** 6
            duals.add(rep.notes["dual"])
    assert duals == {True, False}


def test_dense_exchange_boundary():
    # delta = 4 on both sides at n = 6: K_6 minus a perfect matching
    K = family("complete", 6)
    X = Graph(6, [e for e in K.edges if e not in {(0, 1), (2, 3), (4, 5)}])
    a, b = identity(6), (5, 4, 3, 2, 1, 0)
    rep = solve_dense_exchange(X, X, a, b)
    assert replay(X, X, a, rep.sequence.moves) == b


def test_dense_exchange_rejects():
    with pytest.raises(DegreeConditionViolated):
        solve_dense_exchange(family("path", 6), family("complete", 6), identity(6), identity(6))
    with pytest.raises(ValueError):
        solve_dense_exchange(family("complete", 5), family("complete", 6), identity(5), identity(5))
