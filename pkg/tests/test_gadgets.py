import itertools
import random

import pytest

from fsgraphs import constants
from fsgraphs.bench import _gadget_hosts
from fsgraphs.fs import replay
from fsgraphs.graph import Graph, family, is_bipartite
from fsgraphs.star.gadgets import (Board, GadgetError, Transport, block_on, circular_block,
                                   elementary_3cycle, elementary_double_transposition,
                                   elementary_transposition, gadget_lengths, rotation_gadget,
                                   transposition_gadget)
from fsgraphs.star.theta import walk_effect


def hosts(seed, count):
    return _gadget_hosts(random.Random(seed), count)


def fresh(Y, rng):
    occ = list(range(Y.n))
    rng.shuffle(occ)
    return Board(Y, occ)


def check_replay(b, before_placement):
    X = family("star", b.Y.n)
    assert replay(X, b.Y, before_placement, b.moves()) == b.placement()


def test_board_step_and_undo():
    Y = family("cycle", 5)
    b = Board(Y, [0, 1, 2, 3, 4])
    m = b.mark()
    b.go([0, 1, 2])
    assert b.occ == [1, 2, 0, 3, 4] and b.s == 2
    b.undo_since(m)
    assert b.occ == [0, 1, 2, 3, 4] and b.s == 0
    with pytest.raises(GadgetError):
        b.step(2)


def test_circular_blocks():
    assert circular_block([1, 2, 3, 4, 5], [5, 1])
    assert not circular_block([1, 2, 3, 4, 5], [1, 3])
    assert block_on([0, 1, 2, 3, 4], 1, [0, 2])


def test_rotation_gadget_effect():
    for Y in hosts(11, 40):
        base, cyc, walk, fcyc = rotation_gadget(Y)
        eff = walk_effect(Y.n, walk)
        moved = [v for v in range(Y.n) if eff[v] != v]
        assert sorted(moved) == sorted(cyc) and walk[0] == walk[-1] == base


def test_transposition_gadget_effect():
    for Y in hosts(12, 60):
        if is_bipartite(Y)[0]:
            continue
        base, tr, walk, _ = transposition_gadget(Y)
        eff = walk_effect(Y.n, walk)
        a, c = tr
        assert Y.has_edge(a, c) and eff[a] == c and eff[c] == a
        assert all(eff[v] == v for v in range(Y.n) if v not in tr)


def test_transposition_gadget_without_triangle():
    # odd cycles of length 5 and 7, no triangle
    Y = family("theta", 8, (1, 2, 3))
    base, tr, walk, _ = transposition_gadget(Y)
    assert len(walk) > 4 and walk[0] == walk[-1]


def test_elementary_transposition_exact_and_involution():
    rng = random.Random(3)
    for Y in hosts(13, 50):
        if is_bipartite(Y)[0]:
            continue
        b = fresh(Y, rng)
        start = b.placement()
        occ0 = list(b.occ)
        a, c = rng.choice([e for e in sorted(Y.edges) if b.s not in e])
        elementary_transposition(b, a, c)
        want = list(occ0)
        want[a], want[c] = want[c], want[a]
        assert b.occ == want
        elementary_transposition(b, a, c)
        assert b.occ == occ0
        check_replay(b, start)
        n = Y.n
        assert b.mark() <= 2 * constants.get("C_et") * n ** 2


def test_elementary_3cycle_exact_and_order_three():
    rng = random.Random(4)
    for Y in hosts(14, 50):
        b = fresh(Y, rng)
        start = b.placement()
        occ0 = list(b.occ)
        trips = [(a, m, c) for m in range(Y.n) for a in Y.adj[m] for c in Y.adj[m]
                 if a != c and b.s not in (a, m, c)]
        if not trips:
            continue
        a, m, c = rng.choice(trips)
        mk = b.mark()
        elementary_3cycle(b, a, m, c)
        assert b.mark() - mk <= constants.get("C_3c") * Y.n ** 2
        want = list(occ0)
        want[m], want[c], want[a] = occ0[a], occ0[m], occ0[c]
        assert b.occ == want
        elementary_3cycle(b, a, m, c)
        elementary_3cycle(b, a, m, c)
        assert b.occ == occ0
        check_replay(b, start)


def test_elementary_double_transposition():
    rng = random.Random(5)
    for Y in hosts(15, 50):
        b = fresh(Y, rng)
        occ0 = list(b.occ)
        edges = [e for e in sorted(Y.edges) if b.s not in e]
        pairs = [(e, f) for e, f in itertools.combinations(edges, 2) if not set(e) & set(f)]
        if not pairs:
            continue
        (a, c), (d, e) = rng.choice(pairs)
        mk = b.mark()
        elementary_double_transposition(b, (a, c), (d, e))
        assert b.mark() - mk <= constants.get("C_dt") * Y.n ** 3
        want = list(occ0)
        want[a], want[c] = want[c], want[a]
        want[d], want[e] = want[e], want[d]
        assert b.occ == want


def test_transport_places_tokens():
    rng = random.Random(6)
    for Y in hosts(16, 40):
        base, cyc, walk, fcyc = rotation_gadget(Y)
        b = fresh(Y, rng)
        trips = [(a, m, c) for m in range(Y.n) for a in Y.adj[m] for c in Y.adj[m]
                 if a != c and b.s not in (a, m, c)]
        if not trips:
            continue
        persons = [b.occ[v] for v in rng.choice(trips)]
        mk = b.mark()
        Transport(b, persons, cyc, base, fcyc).run()
        assert b.s == base
        assert sorted(b.pos[p] for p in persons) == sorted(cyc)
        assert b.mark() - mk <= constants.get("C_tt") * Y.n ** 2


def test_gadget_errors():
    Y = family("complete", 5)
    b = Board(Y, [0, 1, 2, 3, 4])
    with pytest.raises(GadgetError):
        elementary_transposition(b, 0, 1)
    with pytest.raises(GadgetError):
        elementary_3cycle(b, 0, 1, 2)
    with pytest.raises(GadgetError):
        elementary_double_transposition(b, (1, 2), (2, 3))
    P = family("path", 5)
    with pytest.raises(GadgetError):
        elementary_transposition(Board(P, [0, 1, 2, 3, 4]), 2, 4)


def test_gadget_lengths_report():
    out = gadget_lengths(family("complete", 6))
    assert set(out) == {"rotation", "transposition"}
    assert set(gadget_lengths(family("grid", 9))) == {"rotation"}
    assert gadget_lengths(family("cycle", 6)) == {}
