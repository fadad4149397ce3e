"""Routers for dense X and Y (minimum-degree conditions).

Both plan a sequence of transpositions of X-adjacent persons with the K_n
router run on the role-inverted instance, then realize each transposition
with friendly swaps.
"""
from __future__ import annotations

import math

from . import constants
from .fs import check_config, occupants, report_ok
from .graph import Graph, induced_subgraph, is_connected, min_degree
from .kn import solve_kn


class DegreeConditionViolated(ValueError):
    pass


class WitnessNotFound(RuntimeError):
    pass


class SubproblemUnsolvable(RuntimeError):
    pass


def three_swap_condition(X: Graph, Y: Graph) -> bool:
    return min_degree(X) + min_degree(Y) >= math.ceil(3 * X.n / 2)


def exchange_condition(X: Graph, Y: Graph) -> bool:
    dx, dy = min_degree(X), min_degree(Y)
    return min(dx, dy) + 2 * max(dx, dy) >= 2 * X.n


def bangachev_condition(X: Graph, Y: Graph) -> bool:
    """2 min + 3 max >= 3n; exposed as a checker only."""
    dx, dy = min_degree(X), min_degree(Y)
    return 2 * min(dx, dy) + 3 * max(dx, dy) >= 3 * X.n


def transposition_plan(X: Graph, start, target):
    """Person pairs (X-edges) whose successive exchanges turn start into target."""
    inv_s = tuple(occupants(start))
    inv_t = tuple(occupants(target))
    rep = solve_kn(X, inv_s, inv_t)
    return rep.sequence.moves


def find_witness(X: Graph, Y: Graph, occ, a, b):
    """Smallest position r adjacent to a and b whose occupant is a friend of both movers."""
    p, q = occ[a], occ[b]
    for r in sorted(set(Y.adj[a]) & set(Y.adj[b])):
        w = occ[r]
        if X.has_edge(w, p) and X.has_edge(w, q):
            return r
    return None


def _apply(occ, pos, moves, a, b):
    p, q = occ[a], occ[b]
    occ[a], occ[b] = q, p
    pos[p], pos[q] = b, a
    moves.append((a, b))


def _check(X, Y, start, target, cond, name):
    if X.n != Y.n:
        raise ValueError("X and Y need the same vertex count")
    if not (is_connected(X) and is_connected(Y)):
        raise DegreeConditionViolated("X and Y must be connected")
    if not cond(X, Y):
        raise DegreeConditionViolated(f"degree condition for {name} does not hold")
    return check_config(start, Y.n), check_config(target, Y.n)


def solve_dense_3swap(X: Graph, Y: Graph, start, target):
    start, target = _check(X, Y, start, target, three_swap_condition, "dense3")
    n = X.n
    budget = 3 * n * (n - 1) // 2
    occ = occupants(start)
    pos = list(start)
    moves = []
    for p, q in transposition_plan(X, start, target):
        a, b = pos[p], pos[q]
        if Y.has_edge(a, b):
            _apply(occ, pos, moves, a, b)
            continue
        r = find_witness(X, Y, occ, a, b)
        if r is None:
            raise WitnessNotFound(f"no common witness for positions {a}, {b}")
        for u, v in ((r, a), (r, b), (a, r)):
            _apply(occ, pos, moves, u, v)
    return report_ok(start, moves, budget, "dense3")


def exchange_moves(X: Graph, Y: Graph, occ, a, b, host_vertices=None):
    """Friendly swaps exchanging the occupants of a and b, everyone else fixed.

    The person p at a plays the star centre on Y restricted to the positions
    of p's closed X-neighbourhood (or ``host_vertices`` when given).
    Returns None when that star subproblem has no solution.
    """
    from .star.solver import solve_star_occ
    p, q = occ[a], occ[b]
    if Y.has_edge(a, b):
        return [(a, b)]
    if host_vertices is None:
        pos = {x: v for v, x in enumerate(occ)}
        host_vertices = sorted(pos[x] for x in (p, *X.adj[p]))
    H, labels = induced_subgraph(Y, host_vertices)
    # star persons: p becomes 0, the others keep distinct nonzero tags
    tag = {x: i + 1 for i, x in enumerate(sorted(occ[v] for v in labels if occ[v] != p))}
    tag[p] = 0
    A = [tag[occ[v]] for v in labels]
    B = list(A)
    ia, ib = labels.index(a), labels.index(b)
    B[ia], B[ib] = A[ib], A[ia]
    walk = solve_star_occ(H, A, B)
    if walk is None:
        return None
    return [(labels[u], labels[v]) for u, v in zip(walk, walk[1:])]


def solve_dense_exchange(X: Graph, Y: Graph, start, target):
    start, target = _check(X, Y, start, target, exchange_condition, "dense-exchange")
    n = X.n
    budget = int(constants.get("K_dense") * n ** 6)
    if min_degree(X) <= min_degree(Y):
        moves = _exchange_core(X, Y, start, target)
        return report_ok(start, moves, budget, "dense-exchange", dual=False)
    # the neighbourhood argument needs the position graph to be the denser one,
    # so solve FS(Y, X) and read each dual move (persons u, v swap) back here
    dual = _exchange_core(Y, X, tuple(occupants(start)), tuple(occupants(target)))
    occ = occupants(start)
    pos = list(start)
    moves = []
    for u, v in dual:
        _apply(occ, pos, moves, pos[u], pos[v])
    return report_ok(start, moves, budget, "dense-exchange", dual=True)


def _exchange_core(X, Y, start, target):
    occ = occupants(start)
    pos = list(start)
    moves = []
    for p, q in transposition_plan(X, start, target):
        a, b = pos[p], pos[q]
        seq = exchange_moves(X, Y, occ, a, b)
        if seq is None:
            raise SubproblemUnsolvable(f"star subproblem for exchange ({a},{b}) has no solution")
        for u, v in seq:
            _apply(occ, pos, moves, u, v)
    return moves
