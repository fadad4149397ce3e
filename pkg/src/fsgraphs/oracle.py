"""Exhaustive search over FS(X, Y) for small n.

States are placements ranked in lexicographic (Lehmer) order, so the state
arrays are flat and indexed by rank. Edges are generated with numpy one
Y-edge at a time and handed to scipy.sparse for components and distances.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .fs import StateBudgetExceeded, apply_move, check_config, state_budget
from .graph import Graph, family

ALL_PAIRS_CAP = 2000


# ------------------------------------------------------------ ranking

def rank(c) -> int:
    n = len(c)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if c[j] < c[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> tuple:
    items = list(range(n))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        q, r = divmod(r, f)
        out.append(items.pop(q))
    return tuple(out)


def rank_rows(P: np.ndarray) -> np.ndarray:
    """Vectorised Lehmer rank of every row of P."""
    n = P.shape[1]
    out = np.zeros(P.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (P[:, i + 1:] < P[:, i:i + 1]).sum(axis=1)
        out += smaller.astype(np.int64) * math.factorial(n - 1 - i)
    return out


@lru_cache(maxsize=4)
def all_states(n: int) -> np.ndarray:
    """Every placement, row r having rank r."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)


def _check_budget(n, budget=None):
    cap = state_budget() if budget is None else budget
    if math.factorial(n) > cap:
        raise StateBudgetExceeded(f"{n}! states exceed the budget of {cap}")


# ------------------------------------------------------------ graph of states

def _adj_matrix(X: Graph) -> np.ndarray:
    A = np.zeros((X.n, X.n), dtype=bool)
    for u, v in X.edges:
        A[u, v] = A[v, u] = True
    return A


@lru_cache(maxsize=8)
def state_graph(X: Graph, Y: Graph):
    """Symmetric CSR adjacency of FS(X, Y) over ranks."""
    if X.n != Y.n:
        raise ValueError("X and Y need the same number of vertices")
    n = X.n
    _check_budget(n)
    P = all_states(n)
    occ = np.argsort(P, axis=1).astype(np.int8)
    XA = _adj_matrix(X)
    N = P.shape[0]
    ids = np.arange(N, dtype=np.int64)
    rows, cols = [], []
    for a, b in sorted(Y.edges):
        pa = occ[:, a].astype(np.int64)
        pb = occ[:, b].astype(np.int64)
        legal = XA[pa, pb]
        if not legal.any():
            continue
        r = ids[legal]
        Q = P[legal].copy()
        k = np.arange(len(r))
        Q[k, pa[legal]] = b
        Q[k, pb[legal]] = a
        rows.append(r)
        cols.append(rank_rows(Q))
    if rows:
        rr = np.concatenate(rows)
        cc = np.concatenate(cols)
    else:
        rr = cc = np.zeros(0, dtype=np.int64)
    data = np.ones(len(rr), dtype=np.int8)
    return csr_matrix((data, (rr, cc)), shape=(N, N))


def neighbors(X: Graph, Y: Graph, r: int) -> list:
    c = unrank(r, X.n)
    out = []
    for a, b in sorted(Y.edges):
        try:
            out.append(rank(apply_move(X, Y, c, (a, b))))
        except ValueError:
            pass
    return sorted(out)


# ------------------------------------------------------------ components

@dataclass
class ComponentSummary:
    component_id: int
    size: int
    diameter: int | None
    representative: int
    exact: bool = True


def component_labels(X: Graph, Y: Graph):
    G = state_graph(X, Y)
    ncomp, labels = connected_components(G, directed=False)
    # relabel so ids follow the smallest rank in each component
    first = np.full(ncomp, -1, dtype=np.int64)
    order = np.arange(len(labels))[::-1]
    first[labels[order]] = order
    perm = np.argsort(np.argsort(first))
    return ncomp, perm[labels]


def _ecc(G, src):
    d = shortest_path(G, method="D", unweighted=True, directed=False, indices=src)
    return d


def component_diameter(G, nodes) -> int:
    """Exact diameter of the component on ``nodes`` (bounding-eccentricities scheme)."""
    size = len(nodes)
    if size == 1:
        return 0
    sub = G[nodes][:, nodes]
    if size <= ALL_PAIRS_CAP:
        d = shortest_path(sub, method="D", unweighted=True, directed=False)
        return int(d.max())
    lo = np.zeros(size)
    hi = np.full(size, np.inf)
    alive = np.ones(size, dtype=bool)
    best_lo = 0
    pick_high = False
    cand = 0
    while alive.any():
        d = _ecc(sub, cand)
        e = d.max()
        best_lo = max(best_lo, e)
        lo = np.maximum(lo, np.maximum(d, e - d))
        hi = np.minimum(hi, e + d)
        best_lo = max(best_lo, lo.max())
        # a vertex stays interesting only while its eccentricity could beat best_lo
        alive &= ~((hi <= best_lo) | (lo == hi))
        alive[cand] = False
        idx = np.flatnonzero(alive)
        if len(idx) == 0:
            break
        cand = idx[np.argmax(hi[idx])] if pick_high else idx[np.argmin(lo[idx])]
        pick_high = not pick_high
    return int(best_lo)


def _symmetric_reps(X: Graph, nodes):
    """Ranks whose eccentricities cover the whole component, when X's symmetry allows it.

    Relabelling persons by an automorphism of X maps FS(X, Y) onto itself. For
    a star centred at 0 every placement with s on a given vertex is such a
    relabelling of any other, so eccentricity depends only on where s sits;
    for K_n it is constant.
    """
    from .fs import is_complete, star_center
    if is_complete(X):
        return [0]
    if star_center(X) == 0:
        P = all_states(X.n)
        spos = P[nodes, 0]
        reps = []
        for v in np.unique(spos):
            reps.append(int(np.flatnonzero(spos == v)[0]))
        return reps
    return None


def components(X: Graph, Y: Graph, diameters: bool = True) -> list:
    G = state_graph(X, Y)
    ncomp, labels = component_labels(X, Y)
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    out = []
    for cid in range(ncomp):
        nodes = order[bounds[cid]:bounds[cid + 1]]
        diam = None
        if diameters:
            reps = _symmetric_reps(X, nodes) if len(nodes) > ALL_PAIRS_CAP else None
            if reps is not None:
                sub = G[nodes][:, nodes]
                diam = int(max(_ecc(sub, r).max() for r in reps))
            else:
                diam = component_diameter(G, nodes)
        out.append(ComponentSummary(cid, len(nodes), diam, int(nodes.min())))
    return out


def component_count(X: Graph, Y: Graph) -> int:
    return component_labels(X, Y)[0]


def max_diameter(X: Graph, Y: Graph) -> int:
    return max(c.diameter for c in components(X, Y))


# ------------------------------------------------------------ distances

def _step_states(X, Y, c):
    occ = [0] * len(c)
    for x, v in enumerate(c):
        occ[v] = x
    for a, b in sorted(Y.edges):
        p, q = occ[a], occ[b]
        if X.has_edge(p, q):
            d = list(c)
            d[p], d[q] = b, a
            yield (a, b), tuple(d)


def distance(X: Graph, Y: Graph, a, b, budget=None):
    """Exact distance by bidirectional search; None when unreachable."""
    path = geodesic(X, Y, a, b, budget)
    return None if path is None else len(path)


def geodesic(X: Graph, Y: Graph, a, b, budget=None):
    """Moves of one shortest path from a to b, or None."""
    a = check_config(a, Y.n)
    b = check_config(b, Y.n)
    cap = state_budget() if budget is None else budget
    if a == b:
        return []
    par = [{a: None}, {b: None}]
    dist = [{a: 0}, {b: 0}]
    front = [[a], [b]]
    while front[0] and front[1]:
        side = 0 if len(front[0]) <= len(front[1]) else 1
        other = 1 - side
        nxt = []
        best = None
        # finish the whole layer so the meeting point gives a shortest path
        for c in front[side]:
            for m, d in _step_states(X, Y, c):
                if d in par[side]:
                    continue
                par[side][d] = (c, m)
                dist[side][d] = dist[side][c] + 1
                if d in par[other]:
                    tot = dist[side][d] + dist[other][d]
                    if best is None or tot < best[0]:
                        best = (tot, d)
                nxt.append(d)
        if best is not None:
            return _join(par, best[1])
        front[side] = nxt
        if len(par[0]) + len(par[1]) > cap:
            raise StateBudgetExceeded("bidirectional search exceeded the state budget")
    return None


def _join(par, meet):
    left = []
    c = meet
    while par[0][c] is not None:
        c, m = par[0][c]
        left.append(m)
    right = []
    c = meet
    while par[1][c] is not None:
        c, m = par[1][c]
        right.append(m)
    return left[::-1] + right


def bfs_distances(X: Graph, Y: Graph, a) -> np.ndarray:
    """Distances from a to every rank (inf when unreachable)."""
    G = state_graph(X, Y)
    return shortest_path(G, method="D", unweighted=True, directed=False, indices=rank(a))


def geodesic_from_ranks(X: Graph, Y: Graph, ra: int, rb: int):
    """Moves along a shortest path between two ranks using the full state graph."""
    G = state_graph(X, Y)
    d, pred = shortest_path(G, method="D", unweighted=True, directed=False, indices=ra,
                            return_predecessors=True)
    if not np.isfinite(d[rb]):
        return None
    chain = [rb]
    while chain[-1] != ra:
        chain.append(int(pred[chain[-1]]))
    chain = chain[::-1]
    n = X.n
    moves = []
    for u, v in zip(chain, chain[1:]):
        cu, cv = unrank(u, n), unrank(v, n)
        diff = [x for x in range(n) if cu[x] != cv[x]]
        moves.append(tuple(sorted(cu[x] for x in diff)))
    return moves


# ------------------------------------------------------------ sweeps

def diameter_sweep(family_x: str, family_y: str, n_range):
    rows = []
    for n in n_range:
        X = family(family_x, n)
        Y = family(family_y, n)
        rows.append((n, max_diameter(X, Y)))
    return rows
