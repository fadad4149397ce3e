"""Theta-frame rotations: s walks around a theta subgraph and comes back,
leaving exactly three tokens cyclically permuted.

Scripts are built once per shape (i, j, k) on canonical labels (endpoints 0
and 1, then the internal vertices of P, Q and R) and mapped onto a concrete
frame. Every script is checked by simulation; if it realizes the inverse of
the wanted cycle the walk is simply reversed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from ..fs import occupants
from ..graph import ThetaFrame, theta_frame_canonical

S = 0  # star centre person


class ThetaError(ValueError):
    pass


# ------------------------------------------------------------ walk helpers

def walk_moves(walk):
    return [(a, b) for a, b in zip(walk, walk[1:])]


def walk_effect(n, walk):
    """eff[v] = original position of the token that ends at v."""
    occ = list(range(n))
    for a, b in zip(walk, walk[1:]):
        occ[a], occ[b] = occ[b], occ[a]
    return tuple(occ)


def cycle_effect(n, cyc):
    """Positional effect of the 3-cycle (x y z): occupant of x goes to y, y to z, z to x."""
    x, y, z = cyc
    eff = list(range(n))
    eff[y], eff[z], eff[x] = x, y, z
    return tuple(eff)


def compose(a, b):
    """Effect of doing a then b."""
    return tuple(a[x] for x in b)


def invert(a):
    out = [0] * len(a)
    for v, x in enumerate(a):
        out[x] = v
    return tuple(out)


# ------------------------------------------------------------ AB moves

def ab_walk(paths, A, B):
    """Vertex walk of a type-AB move starting at endp1."""
    a, b = paths[A], paths[B]
    return list(a) + list(reversed(b))[1:]


def ab_words_walk(paths, words, start):
    walk = [start]
    for w in words:
        seg = ab_walk(paths, w[0], w[1])
        walk.extend(seg[1:])
    return walk


def inverse_words(words):
    return [w[::-1] for w in reversed(words)]


def type_ab_move(Y, c, frame: ThetaFrame, A: str, B: str):
    """Moves of a type-AB move on a concrete configuration; s must sit on endp1."""
    if A == B or A not in "PQR" or B not in "PQR":
        raise ThetaError(f"bad path pair {A}{B}")
    if c[S] != frame.endp1:
        raise ThetaError("type-AB move needs s on endp1")
    return walk_moves(ab_walk(frame.paths(), A, B))


# ------------------------------------------------------------ case table

def case_of(i, j, k):
    if (i, j, k) == (1, 2, 2):
        raise ThetaError("theta(1,2,2) has no rotation")
    if not (0 <= i <= j <= k) or (i, j) == (0, 0):
        raise ThetaError(f"bad theta shape {(i, j, k)}")
    if i == 0:
        return "ii" if k == 1 else "i"
    if i == 1 and j == 1:
        return "iii" if k == 1 else "iv"
    if i == 1 and j == 2:
        return "v"
    if i == 2 and j == 2:
        return "vii" if k < 6 else "viii"
    return "vi"


QSW = ["QP", "QR", "PQ", "RQ"]
RSW = ["RP", "RQ", "PR", "QR"]

# words found by breadth-first search over AB moves (see search_ab_word)
CASE_VII_WORDS = {
    2: ["PQ", "PQ", "PR", "PQ", "PQ", "PR"],
    3: ["PQ", "PQ", "RQ", "PR", "PR", "PQ", "RQ", "PQ", "PR", "PR"],
    4: ["PR", "PQ", "RQ", "RQ", "RQ", "PR", "PR", "QR", "QR"],
    5: ["PQ", "PQ", "PR", "PR", "QP", "RP", "RP", "QR", "QP", "QP", "RP"],
}


def _realigned(ops, loops):
    words = []
    for op in ops:
        words += op + ["PR"] * loops
    return words


def _case_words(case, i, j, k):
    if case == "i":
        return ["QR", "PR", "PQ", "RP", "QP", "RQ"]
    if case == "iv":
        return ["PR", "QR", "PQ", "RQ", "RP"]
    if case == "v":
        # fixed-window rotations; three PR loops put every other token back in place
        op1 = ["QP", "RP"] * 3
        op2 = ["RP"] + op1 + ["PR"]
        return _realigned([op1] * 3 + [op2] * 3 + [op1] * 2, 3)
    if case == "viii":
        op1 = ["QP", "RP", "RP"] * 3
        op2 = ["RP"] + op1 + ["PR"]
        plan = []
        for _ in range(4):
            plan += [op1] + [op2] * 5 + [op1, op2]
        plan += [op2]
        return _realigned(plan, 6)
    if case == "vi":
        if i == 1:
            s1 = ["QP", "QR", "PQ"]
            s2 = (QSW + RSW) * 2
        else:
            s1 = ["QR", "QR", "PR", "PQ", "RQ", "QP"]
            s2 = (QSW + RSW) * 4
        return s1 + s2 + inverse_words(s1)
    if case == "vii":
        return CASE_VII_WORDS[k]
    raise ThetaError(case)


@dataclass(frozen=True)
class CanonicalRotation:
    case_id: str
    base: int
    cycle: tuple  # positions (x, y, z), standard reading
    walk: tuple


@lru_cache(maxsize=None)
def canonical_rotation(i, j, k) -> CanonicalRotation:
    case = case_of(i, j, k)
    fr = theta_frame_canonical(i, j, k)
    P, Q, R = fr.pathP, fr.pathQ, fr.pathR
    paths = fr.paths()
    e1, e2 = 0, 1
    if case == "ii":
        base = R[1]
        walk = [R[1], e2, Q[1], e1, R[1]]
        cyc = (e1, Q[1], e2)
    elif case == "iii":
        base = Q[1]
        walk = [Q[1], e2, P[1], e1, Q[1]]
        cyc = (P[1], e1, e2)
    else:
        base = e1
        walk = ab_words_walk(paths, _case_words(case, i, j, k), e1)
        cyc = {
            "i": lambda: (e2, R[k], R[k - 1]),
            "iv": lambda: (R[k - 1], R[k], e2),
            "v": lambda: (R[3], R[2], R[1]),
            "vi": lambda: (e2, R[k], R[k - 1]),
            "vii": lambda: (R[k - 1], R[k], e2),
            "viii": lambda: (R[5], R[4], R[3]),
        }[case]()
    n = fr.host.n
    eff = walk_effect(n, walk)
    want = cycle_effect(n, cyc)
    if eff == invert(want):
        walk = walk[::-1]
    elif eff != want:
        raise AssertionError(f"rotation script for {(i, j, k)} does not realize {cyc}")
    return CanonicalRotation(case, base, cyc, tuple(walk))


# ------------------------------------------------------------ concrete frames

def frame_map(frame: ThetaFrame):
    """Canonical label -> host vertex."""
    return frame.vertices()


@dataclass
class RotationPlan:
    case_id: str
    base: int
    cycle_positions: tuple
    target_cycle: tuple  # persons, filled for a concrete configuration
    moves: list


def rotation_on_frame(frame: ThetaFrame):
    """(case, base, cycle positions, vertex walk) for a concrete frame."""
    rot = canonical_rotation(*frame.params)
    m = frame_map(frame)
    return rot.case_id, m[rot.base], tuple(m[v] for v in rot.cycle), [m[v] for v in rot.walk]


def theta_rotate(Y, c, frame: ThetaFrame) -> RotationPlan:
    case, base, cyc, walk = rotation_on_frame(frame)
    if c[S] != base:
        raise ThetaError(f"s must start on vertex {base} for case ({case})")
    occ = occupants(c)
    return RotationPlan(case, base, cyc, tuple(occ[v] for v in cyc), walk_moves(walk))


def theta_tokens(frame: ThetaFrame, c):
    """Person labels s, t, p1.., q1.., r1.. for the configuration c."""
    occ = occupants(c)
    out = {"s": occ[frame.endp1], "t": occ[frame.endp2]}
    for name, path in (("p", frame.pathP), ("q", frame.pathQ), ("r", frame.pathR)):
        for idx, v in enumerate(path[1:-1]):
            out[f"{name}{idx + 1}"] = occ[v]
    return out


# ------------------------------------------------------------ word search

def search_ab_word(i, j, k, cyc, max_states=3_000_000):
    """Shortest AB-word whose positional effect is the 3-cycle ``cyc`` or its inverse.

    Searches the group generated by the six AB effects; used to derive the
    case (vii) words and by the tests to re-derive them.
    """
    fr = theta_frame_canonical(i, j, k)
    paths = fr.paths()
    n = fr.host.n
    gens = {w: walk_effect(n, ab_walk(paths, w[0], w[1])) for w in ("PQ", "QP", "PR", "RP", "QR", "RQ")}
    goals = {cycle_effect(n, cyc), invert(cycle_effect(n, cyc))}
    start = tuple(range(n))
    par = {start: None}
    dq = deque([start])
    while dq:
        p = dq.popleft()
        for w, g in gens.items():
            q = compose(p, g)
            if q in par:
                continue
            par[q] = (p, w)
            if q in goals:
                words = []
                while par[q] is not None:
                    q, w2 = par[q]
                    words.append(w2)
                return words[::-1]
            if len(par) > max_states:
                return None
            dq.append(q)
    return None
