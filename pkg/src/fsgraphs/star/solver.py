"""Router for FS(Star_n, Y) with person 0 as the centre s.

Internally configurations are occupancy lists (position -> person) and the
answer is the walk of s. Persons keep their global labels in subproblems;
only positions are relabelled when recursing into induced subgraphs.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from .. import constants
from ..fs import check_config, occupants, report_ok, report_unreachable
from ..graph import (Graph, components, cut_vertices, family, find_isomorphism, induced_subgraph,
                     is_bipartite, is_biconnected, is_connected, is_cycle_graph, shortest_path)
from ..kn import solve_kn_plan
from .gadgets import (Board, elementary_3cycle, elementary_double_transposition,
                      elementary_transposition)
from .theta import walk_moves

S = 0


class SolverError(RuntimeError):
    pass


# ------------------------------------------------------------ structure cache

@lru_cache(maxsize=4096)
def _sub(Y: Graph, verts: tuple):
    return induced_subgraph(Y, verts)


def cycle_order(Y: Graph):
    order = [0]
    prev = None
    while True:
        cur = order[-1]
        nxt = [w for w in Y.adj[cur] if w != prev]
        if not nxt or nxt[0] == 0:
            break
        order.append(nxt[0])
        prev = cur
        if len(order) > Y.n:
            break
    return order


_T122 = None


def _theta122():
    global _T122
    if _T122 is None:
        _T122 = family("theta", 7, (1, 2, 2))
    return _T122


@lru_cache(maxsize=4096)
def shape(Y: Graph):
    """Classify Y for the recursion: kind plus whatever data that kind needs."""
    if Y.n == 1:
        return ("one", None)
    if not is_connected(Y):
        return ("disconnected", tuple(tuple(c) for c in components(Y)))
    if Y.n == 2:
        return ("edge", None)
    if len(Y.edges) == Y.n - 1:
        return ("tree", None)
    if is_biconnected(Y):
        if is_cycle_graph(Y):
            return ("cycle", tuple(cycle_order(Y)))
        if Y.n == 7 and len(Y.edges) == 8:
            iso = find_isomorphism(Y, _theta122())
            if iso is not None:
                return ("t122", iso)
        if is_bipartite(Y)[0]:
            return ("bip", None)
        return ("nonbip", None)
    v = min(cut_vertices(Y))
    rest = [u for u in range(Y.n) if u != v]
    sides = tuple(tuple(sorted(c + [v])) for c in components(Y, rest))
    return ("cut", (v, sides))


# ------------------------------------------------------------ small helpers

def _run(Y, occ, walk):
    b = Board(Y, occ)
    b.go(walk)
    return b.occ


def _restrict(occ, verts):
    return [occ[v] for v in verts]


def _bfs_walk(Y: Graph, A, B, limit=100_000):
    """Shortest s-walk from A to B by plain search (tiny hosts only)."""
    start, goal = tuple(A), tuple(B)
    if start == goal:
        return [A.index(S)]
    par = {start: None}
    dq = deque([start])
    while dq:
        st = dq.popleft()
        s = st.index(S)
        for w in Y.adj[s]:
            lst = list(st)
            lst[s], lst[w] = lst[w], S
            nst = tuple(lst)
            if nst in par:
                continue
            par[nst] = st
            if nst == goal:
                walk = []
                cur = nst
                while cur is not None:
                    walk.append(cur.index(S))
                    cur = par[cur]
                return walk[::-1]
            if len(par) > limit:
                raise SolverError("search limit exceeded")
            dq.append(nst)
    return None


# ------------------------------------------------------------ component key

@lru_cache(maxsize=16)
def _t122_components():
    """Component id of every occupancy tuple of FS(Star_7, theta(1,2,2)) with persons 0..6."""
    import itertools
    H = _theta122()
    comp = {}
    cid = 0
    for st in itertools.permutations(range(7)):
        if st in comp:
            continue
        comp[st] = cid
        dq = deque([st])
        while dq:
            cur = dq.popleft()
            s = cur.index(S)
            for w in H.adj[s]:
                lst = list(cur)
                lst[s], lst[w] = lst[w], S
                nst = tuple(lst)
                if nst not in comp:
                    comp[nst] = cid
                    dq.append(nst)
        cid += 1
    return comp


def _normalize(occ):
    rank = {p: i for i, p in enumerate(sorted(occ))}
    return [rank[p] for p in occ]


def _perm_parity(seq):
    seen = [False] * len(seq)
    par = 0
    for i in range(len(seq)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        par ^= (length - 1) & 1
    return par


def _key(Y: Graph, occ):
    kind, data = shape(Y)
    s = occ.index(S)
    if kind == "one":
        return ("one",)
    if kind == "edge":
        return ("edge", occ[1 - s])
    if kind == "disconnected":
        comp = next(c for c in data if s in c)
        frozen = tuple(sorted((v, occ[v]) for v in range(Y.n) if v not in comp))
        H, labels = _sub(Y, comp)
        return ("dis", frozen, _key(H, _restrict(occ, labels)))
    if kind == "tree" or kind == "cut":
        if kind == "tree":
            v = min(cut_vertices(Y))
            rest = [u for u in range(Y.n) if u != v]
            sides = tuple(tuple(sorted(c + [v])) for c in components(Y, rest))
        else:
            v, sides = data
        occ2 = _run(Y, occ, shortest_path(Y, s, {v}))
        keys = []
        for side in sides:
            H, labels = _sub(Y, side)
            keys.append(_key(H, _restrict(occ2, labels)))
        return ("cut", tuple(keys))
    if kind == "cycle":
        seq = [occ[v] for v in data if occ[v] != S]
        i = seq.index(min(seq))
        return ("cyc", tuple(seq[i:] + seq[:i]))
    if kind == "t122":
        iso = data
        canon = [0] * 7
        for v in range(7):
            canon[iso[v]] = occ[v]
        norm = tuple(_normalize(canon))
        return ("t122", frozenset(occ), _t122_components()[norm])
    if kind == "nonbip":
        return ("nb", frozenset(occ))
    # bipartite block: Wilson's invariant is the parity once s is parked on vertex 0
    occ2 = _run(Y, occ, shortest_path(Y, s, {0}))
    norm = _normalize(occ2)
    return ("bip", frozenset(occ), _perm_parity([x - 1 for x in norm[1:]]))


def star_component_key(Y: Graph, c):
    """Hashable key equal for two placements exactly when they are connected in FS(Star_n, Y)."""
    return _key(Y, occupants(check_config(c, Y.n)))


# ------------------------------------------------------------ solvers

def _solve(Y: Graph, A, B):
    """s-walk taking occupancy A to B, or None when unreachable."""
    if list(A) == list(B):
        return [A.index(S)]
    if sorted(A) != sorted(B):
        return None
    kind, data = shape(Y)
    if kind == "one":
        return None
    if kind == "edge":
        s = A.index(S)
        return [s, 1 - s]
    if kind == "disconnected":
        s = A.index(S)
        comp = next(c for c in data if s in c)
        if any(A[v] != B[v] for v in range(Y.n) if v not in comp):
            return None
        H, labels = _sub(Y, comp)
        w = _solve(H, _restrict(A, labels), _restrict(B, labels))
        return None if w is None else [labels[v] for v in w]
    if kind == "tree":
        return _solve_tree(Y, A, B)
    if kind == "cut":
        return _solve_cut(Y, A, B, *data)
    return _solve_block(Y, A, B, kind, data)


def _solve_tree(Y, A, B):
    s, t = A.index(S), B.index(S)
    path = shortest_path(Y, s, {t})
    if path is None:
        return None
    return path if _run(Y, A, path) == list(B) else None


def _solve_cut(Y, A, B, v, sides):
    sA, sB = A.index(S), B.index(S)
    # shortcut: everything outside one side already agrees and s stays inside it
    for side in sides:
        ss = set(side)
        if sA in ss and sB in ss and all(A[u] == B[u] for u in range(Y.n) if u not in ss):
            H, labels = _sub(Y, side)
            w = _solve(H, _restrict(A, labels), _restrict(B, labels))
            return None if w is None else [labels[u] for u in w]
    W1 = shortest_path(Y, sA, {v})
    W2 = shortest_path(Y, sB, {v})
    A2 = _run(Y, A, W1)
    B2 = _run(Y, B, W2)
    walk = list(W1)
    for side in sides:
        H, labels = _sub(Y, side)
        a, b = _restrict(A2, labels), _restrict(B2, labels)
        if sorted(a) != sorted(b):
            return None
        w = _solve(H, a, b)
        if w is None:
            return None
        walk += [labels[u] for u in w[1:]]
    walk += list(reversed(W2))[1:]
    return walk


def _solve_cycle(Y, A, B, order):
    """Rotate s around the cycle; the orbit has n(n-1) states."""
    L = len(order)
    target = list(B)
    s0 = A.index(S)
    i0 = order.index(s0)
    best = None
    for d in (1, -1):
        occ = list(A)
        i = i0
        for t in range(1, L * (L - 1) + 1):
            j = (i + d) % L
            u, w = order[i], order[j]
            occ[u], occ[w] = occ[w], S
            i = j
            if occ == target:
                if best is None or t < best[0]:
                    best = (t, d)
                break
    if best is None:
        return None
    t, d = best
    return [order[(i0 + d * u) % L] for u in range(t + 1)]


def _solve_block(Y, A, B, kind, data):
    if kind == "cycle":
        return _solve_cycle(Y, A, B, list(data))
    if kind == "t122":
        return _bfs_walk(Y, list(A), list(B))
    board = Board(Y, A)
    w = B.index(S)
    board.go(shortest_path(Y, board.s, {w}))
    rest = [u for u in range(Y.n) if u != w]
    H, labels = _sub(Y, tuple(rest))
    # local K_n instance on Y - w: local person i starts on local position i
    pos_B = {p: v for v, p in enumerate(B)}
    local_of = {g: i for i, g in enumerate(labels)}
    start = tuple(range(len(labels)))
    goal = tuple(local_of[pos_B[board.occ[g]]] for g in labels)
    if kind == "bip":
        rel = list(goal)
        if _perm_parity(rel) == 1:
            return None
    plan = solve_kn_plan(H, start, goal)
    if kind == "nonbip":
        for a, b in plan.moves:
            elementary_transposition(board, labels[a], labels[b])
    else:
        if plan.odd_length:
            raise SolverError("odd-length plan between equal-parity configurations")
        for m1, m2, tag in plan.pairs:
            m1 = tuple(labels[x] for x in m1)
            m2 = tuple(labels[x] for x in m2)
            if set(m1) == set(m2):
                continue
            if tag == "good":
                q = (set(m1) & set(m2)).pop()
                p = (set(m1) - {q}).pop()
                r = (set(m2) - {q}).pop()
                elementary_3cycle(board, r, q, p)
            else:
                elementary_double_transposition(board, m1, m2)
    if board.occ != list(B):
        raise SolverError("biconnected solver finished off target")
    return board.walk


def star_budget(n: int) -> int:
    return int(constants.get("K_star") * n ** 4)


def _report(Y, start, target, solver_id, fn):
    start = check_config(start, Y.n)
    target = check_config(target, Y.n)
    budget = star_budget(Y.n)
    A, B = occupants(start), occupants(target)
    walk = fn(Y, A, B)
    if walk is None:
        return report_unreachable(budget, solver_id)
    return report_ok(start, walk_moves(walk), budget, solver_id)


def solve_star(Y: Graph, start, target):
    return _report(Y, start, target, "star", _solve)


def solve_star_biconnected(Y: Graph, start, target):
    if not is_biconnected(Y):
        raise ValueError("solve_star_biconnected needs a biconnected Y")
    return _report(Y, start, target, "star-biconnected", _solve)


def solve_star_occ(Y: Graph, A, B):
    """Walk-level entry used by other solvers; persons may carry any labels, s is 0."""
    return _solve(Y, list(A), list(B))


# ------------------------------------------------------------ counting

def _group_order(Y: Graph) -> int:
    """Order of the group s induces on the other tokens when it returns home (Y connected)."""
    from math import factorial
    kind, data = shape(Y)
    if kind in ("one", "edge", "tree"):
        return 1
    if kind == "cut":
        out = 1
        for side in data[1]:
            out *= _group_order(_sub(Y, side)[0])
        return out
    if kind == "cycle":
        return Y.n - 1
    if kind == "t122":
        return 120
    if kind == "bip":
        return factorial(Y.n - 1) // 2
    return factorial(Y.n - 1)


def predicted_component_count(Y: Graph) -> int:
    """Number of components of FS(Star_n, Y), from the block structure of Y alone."""
    from math import factorial
    total = 0
    for comp in components(Y):
        H, _ = _sub(Y, tuple(sorted(comp)))
        total += factorial(Y.n - 1) // _group_order(H)
    return total
