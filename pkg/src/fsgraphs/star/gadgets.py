"""Elementary permutations for FS(Star_n, Y) built from walks of the centre s.

Everything here works on a Board: the graph, the occupancy of every position,
and the walk s has taken so far. Person 0 is s. Gadgets append to the walk and
leave s where it started.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from ..graph import (Graph, GraphError, cycle_through_two_edges, find_theta_subgraph,
                     is_bipartite, shortest_path, two_disjoint_paths_to_set)
from .theta import compose, invert, rotation_on_frame, walk_effect, walk_moves

S = 0
TRACKED_BFS_BUDGET = 400_000


class GadgetError(RuntimeError):
    pass


class Board:
    """Live configuration of FS(Star_n, Y) plus the walk of s."""

    def __init__(self, Y: Graph, occ):
        self.Y = Y
        self.occ = list(occ)
        self.pos = {p: v for v, p in enumerate(self.occ)}
        self.s = self.pos[S]
        self.walk = [self.s]

    @classmethod
    def from_placement(cls, Y, c):
        occ = [0] * len(c)
        for x, v in enumerate(c):
            occ[v] = x
        return cls(Y, occ)

    def step(self, v):
        u = self.s
        if not self.Y.has_edge(u, v):
            raise GadgetError(f"s cannot step {u} -> {v}")
        p = self.occ[v]
        self.occ[u], self.occ[v] = p, S
        self.pos[p] = u
        self.pos[S] = v
        self.s = v
        self.walk.append(v)

    def go(self, path):
        if path[0] != self.s:
            raise GadgetError(f"path starts at {path[0]} but s is at {self.s}")
        for v in path[1:]:
            self.step(v)

    def mark(self):
        return len(self.walk) - 1

    def undo_since(self, mark):
        """Walk back over everything done since mark, restoring the board."""
        seg = self.walk[mark:]
        self.go(seg[::-1])

    def moves(self):
        return walk_moves(self.walk)

    def placement(self):
        c = [0] * len(self.occ)
        for v, p in enumerate(self.occ):
            c[p] = v
        return tuple(c)


# ------------------------------------------------------------ cycle tools

def cycle_edges(C):
    L = len(C)
    return {frozenset((C[i], C[(i + 1) % L])) for i in range(L)}


def circular_block(order, positions):
    """True if ``positions`` occupy circularly consecutive slots of ``order``."""
    m = len(order)
    t = len(positions)
    if t >= m:
        return t == m
    idx = {v: i for i, v in enumerate(order)}
    try:
        r = sorted(idx[p] for p in positions)
    except KeyError:
        return False
    gaps = sum(1 for i in range(t) if (r[(i + 1) % t] - r[i]) % m != 1)
    return gaps <= 1


def block_on(C, s, positions):
    """Tracked positions lie on C and are consecutive once s's slot is skipped."""
    order = [v for v in C if v != s]
    return circular_block(order, positions)


def rotation_candidates(C, s, tok, pred, limit=None):
    """Ways to walk s around cycle C so that pred(s, tok) holds.

    ``tok`` maps tracked person -> position. Returns (length, walk) pairs,
    shortest first, over both directions and one full orbit of the state space.
    """
    L = len(C)
    i0 = C.index(s)
    horizon = L * (L - 1) if limit is None else limit
    found = []
    for d in (1, -1):
        at = {v: p for p, v in tok.items()}
        cur = dict(tok)
        i = i0
        if pred(C[i], cur):
            return [(0, [s])]
        for t in range(1, horizon + 1):
            j = (i + d) % L
            v = C[j]
            p = at.pop(v, None)
            if p is not None:
                cur[p] = C[i]
                at[C[i]] = p
            i = j
            if pred(C[i], cur):
                walk = [C[(i0 + d * u) % L] for u in range(t + 1)]
                found.append((t, walk))
    found.sort(key=lambda x: x[0])
    return found


def simulate(Y, s, tok, walk):
    """Tracked positions after s follows walk."""
    at = {v: p for p, v in tok.items()}
    cur = dict(tok)
    for v in walk[1:]:
        p = at.pop(v, None)
        if p is not None:
            cur[p] = s
            at[s] = p
        s = v
    return s, cur


def tracked_bfs(Y, s, tok, goal, allowed=None, budget=TRACKED_BFS_BUDGET):
    """Shortest s-walk reaching goal(s, tok) while only tracking a few persons."""
    persons = sorted(tok)
    start = (s, tuple(tok[p] for p in persons))

    def as_dict(state):
        return dict(zip(persons, state[1]))

    if goal(s, dict(tok)):
        return [s]
    par = {start: None}
    dq = deque([start])
    while dq:
        st = dq.popleft()
        u, tp = st
        for w in Y.adj[u]:
            if allowed is not None and w not in allowed:
                continue
            if w in tp:
                k = tp.index(w)
                ntp = tp[:k] + (u,) + tp[k + 1:]
            else:
                ntp = tp
            nst = (w, ntp)
            if nst in par:
                continue
            par[nst] = st
            if goal(w, as_dict(nst)):
                walk = [w]
                cur = st
                while cur is not None:
                    walk.append(cur[0])
                    cur = par[cur]
                return walk[::-1]
            if len(par) > budget:
                return None
            dq.append(nst)
    return None


# ------------------------------------------------------------ transport

class Transport:
    """Brings tracked persons onto a target position set with s on a base vertex.

    Follows a chain of cycles, consecutive ones sharing an edge: mount s on
    the first, rotate the tracked persons into the overlap, hop to the next
    cycle, and finally rotate them onto the target. Local tracked searches
    cover the shapes where the direct rotations do not line up.
    """

    def __init__(self, board: Board, persons, site, base, final_cycle):
        self.b = board
        self.Y = board.Y
        self.persons = list(persons)
        self.site = frozenset(site)
        self.base = base
        self.final_cycle = list(final_cycle)
        self.stats = {"bfs": 0}

    def tok(self):
        return {p: self.b.pos[p] for p in self.persons}

    def done(self, s, tok):
        return s == self.base and set(tok.values()) == self.site

    def run(self):
        b = self.b
        if self.done(b.s, self.tok()):
            return
        chain = self._chain()
        if any(len(C) <= len(self.persons) for C in chain):
            # no room to hold the block plus s on some cycle: search directly
            self._search(self.done, None)
            return
        self._mount(chain[0])
        for C, D in zip(chain, chain[1:]):
            self._transfer(C, D)
        self._finish(chain[-1])
        if not self.done(b.s, self.tok()):
            raise GadgetError("transport ended off target")

    def _chain(self):
        tp = [self.b.pos[p] for p in self.persons]
        # persons are listed along a path of positions
        e_first = [(tp[t], tp[t + 1]) for t in range(len(tp) - 1)]
        Ck = self.final_cycle
        fk = cycle_edges(Ck)
        if all(frozenset(e) in fk for e in e_first):
            return [Ck]
        site_edges = sorted(tuple(sorted(e)) for e in fk if e <= self.site)
        if len(e_first) == 1:
            C1 = cycle_through_two_edges(self.Y, e_first[0], site_edges[0])
        else:
            C1 = _roomy_cycle(self.Y, e_first[0], e_first[1], len(self.persons) + 1)
        if cycle_edges(C1) & fk:
            return [C1, Ck]
        C2 = cycle_through_two_edges(self.Y, e_first[0], site_edges[0])
        return [C1, C2, Ck]

    # -- steps

    def _mount(self, C):
        b = self.b
        if b.s in C:
            return
        tokpos = set(self.tok().values())
        allowed = set(range(self.Y.n)) - tokpos
        path = shortest_path(self.Y, b.s, set(C) - tokpos, allowed=allowed)
        if path is not None:
            b.go(path)
            return
        goal = lambda s, tok: s in C and block_on(C, s, tok.values())
        paths = two_disjoint_paths_to_set(self.Y, b.s, set(C))
        local = set(C)
        for p in paths:
            local.update(p)
        self._search(goal, local)

    def _search(self, goal, local):
        b = self.b
        self.stats["bfs"] += 1
        walk = None
        if local is not None:
            walk = tracked_bfs(self.Y, b.s, self.tok(), goal, allowed=local)
        if walk is None:
            walk = tracked_bfs(self.Y, b.s, self.tok(), goal)
        if walk is None:
            raise GadgetError("tracked search failed")
        b.go(walk)

    def _rotate_then(self, C, pred, after=None, max_tries=64):
        """Rotate on C to the first state satisfying pred for which ``after`` succeeds."""
        b = self.b
        for _, walk in rotation_candidates(C, b.s, self.tok(), pred)[:max_tries]:
            if after is None:
                b.go(walk)
                return True
            s2, tok2 = simulate(self.Y, b.s, self.tok(), walk)
            tail = after(s2, tok2)
            if tail is not None:
                b.go(walk)
                if len(tail) > 1:
                    b.go(tail)
                return True
        return False

    def _mount_path(self, D):
        Dset = set(D)

        def after(s, tok):
            if s in Dset:
                return [s]
            tokpos = set(tok.values())
            allowed = set(range(self.Y.n)) - tokpos
            return shortest_path(self.Y, s, Dset - tokpos, allowed=allowed)
        return after

    def _transfer(self, C, D):
        Dset = set(D)
        ok_on_D = lambda s, tok: all(v in Dset for v in tok.values()) and block_on(D, s, tok.values())
        if self._rotate_then(C, ok_on_D, self._mount_path(D)):
            return
        K = _symmetric_cycle(C, D)
        if K is not None:
            Kset = set(K)
            ok_on_K = lambda s, tok: s in Kset and all(v in Kset for v in tok.values()) and block_on(K, s, tok.values())

            def via_K(s, tok):
                for _, walk in rotation_candidates(K, s, tok, ok_on_D)[:32]:
                    s2, tok2 = simulate(self.Y, s, tok, walk)
                    tail = self._mount_path(D)(s2, tok2)
                    if tail is not None:
                        return walk + tail[1:]
                return None
            if self._rotate_then(C, ok_on_K, via_K):
                return
        goal = lambda s, tok: s in Dset and all(v in Dset for v in tok.values()) and block_on(D, s, tok.values())
        self._search(goal, set(C) | Dset)

    def _finish(self, C):
        b = self.b
        if b.s not in C:
            self._mount(C)
        if self._rotate_then(C, self.done):
            return
        self._search(self.done, set(C))


def _roomy_cycle(Y, e, f, need):
    """Cycle through edges e and f with at least ``need`` vertices when one exists."""
    C = cycle_through_two_edges(Y, e, f)
    if len(C) >= need:
        return C
    shared = set(e) & set(f)
    if len(shared) != 1:
        return C
    b = shared.pop()
    a = (set(e) - {b}).pop()
    c = (set(f) - {b}).pop()
    # detour from a to c avoiding b and the chord ac
    H = Graph(Y.n, [x for x in Y.edges if set(x) != {a, c}])
    path = shortest_path(H, a, {c}, allowed=set(range(Y.n)) - {b})
    if path is None:
        return C
    return path + [b]


def _symmetric_cycle(C, D):
    """Symmetric difference of the edge sets of C and D when it is one cycle."""
    es = cycle_edges(C) ^ cycle_edges(D)
    if not es:
        return None
    nb = {}
    for e in es:
        u, v = tuple(e)
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nb.values()):
        return None
    start = min(nb)
    order = [start]
    prev, cur = None, start
    while True:
        a, c = nb[cur]
        nxt = a if a != prev else c
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != len(nb):
        return None
    return order


def transport(board: Board, persons, site, base, final_cycle):
    Transport(board, persons, site, base, final_cycle).run()


# ------------------------------------------------------------ per-host data

def _frame_cycle(frame, case):
    P, Q, R = frame.pathP, frame.pathQ, frame.pathR
    if case == "ii":
        A, B = Q, R
    elif case == "iii":
        A, B = P, Q
    else:
        A, B = P, R
    return list(A) + list(B[1:-1])[::-1]


@lru_cache(maxsize=256)
def rotation_gadget(Y: Graph):
    """(base, cycle positions, walk, frame cycle) for the 3-cycle gadget of Y."""
    frame = find_theta_subgraph(Y, exclude_122=True)
    case, base, cyc, walk = rotation_on_frame(frame)
    return base, cyc, tuple(walk), tuple(_frame_cycle(frame, case))


def _find_triangle(Y: Graph):
    for u in range(Y.n):
        for v in Y.adj[u]:
            if v <= u:
                continue
            for w in Y.adj[v]:
                if w > v and Y.has_edge(u, w):
                    return u, v, w
    return None


def _transposition_of(eff):
    moved = [v for v, x in enumerate(eff) if x != v]
    if len(moved) == 2 and eff[moved[0]] == moved[1]:
        return tuple(moved)
    return None


@lru_cache(maxsize=256)
def transposition_gadget(Y: Graph):
    """(base, swapped edge, walk, cycle) realizing a single transposition.

    With a triangle s just runs around it. Otherwise the rotation gadget of
    an odd-cycle frame is combined with two-step shifts around the odd cycle
    C, which after |C|-1 rounds leaves two neighbours exchanged.
    """
    tri = _find_triangle(Y)
    if tri is not None:
        u, v, w = tri
        return u, (v, w), (u, v, w, u), (u, v, w)
    frame = find_theta_subgraph(Y, require_odd_cycle=True)
    case, base, cyc, walk = rotation_on_frame(frame)
    P, Q, R = frame.pathP, frame.pathQ, frame.pathR
    cands = [list(P) + list(R[1:-1])[::-1], list(Q) + list(R[1:-1])[::-1]]
    C = next(c for c in cands if len(c) % 2 == 1)
    i = C.index(base)
    C = C[i:] + C[:i]
    n = Y.n
    loops = {1: C + [base], -1: [base] + C[1:][::-1] + [base]}
    lw = {d: walk_effect(n, w) for d, w in loops.items()}
    gw = {1: list(walk), -1: list(walk)[::-1]}
    ge = {d: walk_effect(n, w) for d, w in gw.items()}
    k = len(C) - 1
    best = None
    for g in (1, -1):
        for d in (1, -1):
            unit = compose(compose(ge[g], lw[d]), lw[d])
            eff = tuple(range(n))
            for _ in range(k // 2):
                eff = compose(eff, unit)
            for d2 in (1, -1):
                e2 = eff
                for m in range(len(C)):
                    tr = _transposition_of(e2)
                    if tr is not None and Y.has_edge(*tr):
                        length = (k // 2) * (len(gw[g]) - 1 + 2 * len(C)) + m * len(C)
                        if best is None or length < best[0]:
                            best = (length, g, d, d2, m, tr)
                    e2 = compose(e2, lw[d2])
    if best is None:
        raise GadgetError("no transposition found on the odd frame")
    _, g, d, d2, m, tr = best
    full = [base]
    for _ in range(k // 2):
        full += gw[g][1:] + loops[d][1:] + loops[d][1:]
    for _ in range(m):
        full += loops[d2][1:]
    if walk_effect(n, full) != _swap_eff(n, tr):
        raise GadgetError("transposition walk check failed")
    Tcyc = C
    if frozenset(tr) not in cycle_edges(C):
        Tcyc = cycle_through_two_edges(Y, tr, (base, Y.adj[base][0] if Y.adj[base][0] not in tr else Y.adj[base][-1]))
    return base, tr, tuple(full), tuple(Tcyc)


def _swap_eff(n, tr):
    e = list(range(n))
    a, c = tr
    e[a], e[c] = c, a
    return tuple(e)


# ------------------------------------------------------------ elementary moves

def elementary_transposition(board: Board, a, b):
    """Exchange the occupants of adjacent positions a and b (s elsewhere)."""
    Y = board.Y
    if not Y.has_edge(a, b):
        raise GadgetError("transposition needs an edge")
    if board.s in (a, b):
        raise GadgetError("s may not be one of the exchanged positions")
    base, tr, walk, tcyc = transposition_gadget(Y)
    pa, pb = board.occ[a], board.occ[b]
    start = board.mark()
    s0 = board.s
    Transport(board, [pa, pb], tr, base, tcyc).run()
    mid = board.mark()
    board.go(list(walk))
    seg = board.walk[start:mid + 1]
    board.go(seg[::-1])
    assert board.s == s0


def elementary_3cycle(board: Board, a, b, c):
    """Occupant of a moves to b, of b to c, of c to a. Needs edges ab and bc, s off all three."""
    Y = board.Y
    if not (Y.has_edge(a, b) and Y.has_edge(b, c)):
        raise GadgetError("3-cycle needs edges ab and bc")
    if board.s in (a, b, c):
        raise GadgetError("s may not take part in the 3-cycle")
    base, cyc, walk, fcyc = rotation_gadget(Y)
    pa, pb, pc = board.occ[a], board.occ[b], board.occ[c]
    start = board.mark()
    Transport(board, [pa, pb, pc], cyc, base, fcyc).run()
    mid = board.mark()
    x, y, z = cyc
    step = {(x, y), (y, z), (z, x)}
    reps = 1 if (board.pos[pa], board.pos[pb]) in step else 2
    for _ in range(reps):
        board.go(list(walk))
    seg = board.walk[start:mid + 1]
    board.go(seg[::-1])


def elementary_double_transposition(board: Board, ab, cd):
    """Exchange occupants across two vertex-disjoint edges by a chain of 3-cycles."""
    Y = board.Y
    (a, b), (c, d) = ab, cd
    if len({a, b, c, d}) != 4:
        raise GadgetError("double transposition needs disjoint edges")
    if board.s in (a, b, c, d):
        raise GadgetError("s may not take part in the exchange")
    allowed = set(range(Y.n)) - {board.s}
    best = None
    for src in (a, b):
        path = shortest_path(Y, src, {c, d}, allowed=allowed - ({a, b} - {src}))
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        raise GadgetError("no path between the two edges avoiding s")
    first = b if best[0] == a else a
    last = d if best[-1] == c else c
    p = [first] + best + [last]
    for t in range(len(p) - 2):
        # occupant of p[t] -> p[t+2] -> p[t+1] -> p[t]; middle vertex p[t+1]
        elementary_3cycle(board, p[t + 2], p[t + 1], p[t])
    return p


def move_s_along_path(board: Board, path):
    board.go(list(path))


def is_bipartite_host(Y):
    return is_bipartite(Y)[0]


def gadget_lengths(Y):
    """Lengths of the raw gadget walks, for diagnostics."""
    out = {}
    try:
        out["rotation"] = len(rotation_gadget(Y)[2]) - 1
    except (GraphError, ValueError):
        pass
    if not is_bipartite(Y)[0]:
        try:
            out["transposition"] = len(transposition_gadget(Y)[2]) - 1
        except (GraphError, GadgetError):
            pass
    return out


__all__ = ["Board", "GadgetError", "transport", "elementary_transposition", "elementary_3cycle",
           "elementary_double_transposition", "move_s_along_path", "rotation_gadget",
           "transposition_gadget", "invert"]
