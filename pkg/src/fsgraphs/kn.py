"""Router for FS(K_n, Y): every pair of neighbours may swap, so only Y matters."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fs import check_config, occupants, report_ok, report_unreachable
from .graph import Graph, components, cut_vertices, shortest_path


def _route(Y: Graph, start, target, verts=None):
    """Freeze removable vertices one at a time, routing their final occupant in."""
    cur = list(start)
    occ = occupants(cur)
    dest = occupants(target)
    moves = []
    comps = components(Y, verts)
    for comp in comps:
        R = set(comp)
        while len(R) > 1:
            cuts = cut_vertices(Y, R)
            v = min(x for x in R if x not in cuts)
            p = dest[v]
            path = shortest_path(Y, cur[p], {v}, allowed=R)
            for a, b in zip(path, path[1:]):
                x, y = occ[a], occ[b]
                cur[x], cur[y] = b, a
                occ[a], occ[b] = y, x
                moves.append((a, b))
            R.discard(v)
    return moves


def _reachable(Y: Graph, c1, c2) -> bool:
    for comp in components(Y):
        cs = set(comp)
        if {x for x, v in enumerate(c1) if v in cs} != {x for x, v in enumerate(c2) if v in cs}:
            return False
    return True


def solve_kn(Y: Graph, start, target):
    start = check_config(start, Y.n)
    target = check_config(target, Y.n)
    budget = Y.n * (Y.n - 1) // 2
    if not _reachable(Y, start, target):
        return report_unreachable(budget, "kn")
    return report_ok(start, _route(Y, start, target), budget, "kn")


@dataclass
class KnPlan:
    moves: list
    pairs: list = field(default_factory=list)  # (move1, move2, "good" | "bad")
    odd_length: bool = False

    @property
    def bad_count(self):
        return sum(1 for p in self.pairs if p[2] == "bad")


def solve_kn_plan(Y: Graph, start, target) -> KnPlan:
    """The solve_kn move list chunked into consecutive pairs tagged good (share a vertex) or bad."""
    start = check_config(start, Y.n)
    target = check_config(target, Y.n)
    if not _reachable(Y, start, target):
        raise ValueError("solve_kn_plan called on an unreachable pair")
    moves = _route(Y, start, target)
    plan = KnPlan(moves, odd_length=len(moves) % 2 == 1)
    if plan.odd_length:
        return plan
    for m1, m2 in zip(moves[0::2], moves[1::2]):
        tag = "good" if set(m1) & set(m2) else "bad"
        plan.pairs.append((m1, m2, tag))
    return plan
