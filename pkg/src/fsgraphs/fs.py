"""Configurations, friendly swaps and move sequences for FS(X, Y).

A configuration is a tuple ``placement`` with ``placement[x]`` the Y-position
of person x. Moves are pairs of Y-positions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .graph import Graph, components

Move = Tuple[int, int]


class IllegalMove(ValueError):
    def __init__(self, msg, index=None):
        super().__init__(msg if index is None else f"move {index}: {msg}")
        self.index = index


class UnsupportedInstance(ValueError):
    pass


class StateBudgetExceeded(RuntimeError):
    pass


def state_budget() -> int:
    """Oracle cap on the number of states, FS_STATE_BUDGET overrides 9!."""
    return int(os.environ.get("FS_STATE_BUDGET", 362880))


# ------------------------------------------------------------ configurations

def check_config(c: Sequence[int], n: Optional[int] = None) -> tuple:
    c = tuple(int(v) for v in c)
    if sorted(c) != list(range(len(c))):
        raise ValueError(f"not a permutation: {list(c)}")
    if n is not None and len(c) != n:
        raise ValueError(f"configuration has {len(c)} entries, expected {n}")
    return c


def identity(n: int) -> tuple:
    return tuple(range(n))


def occupants(c: Sequence[int]) -> list:
    """Inverse of a placement: occ[v] = person at position v."""
    occ = [0] * len(c)
    for x, v in enumerate(c):
        occ[v] = x
    return occ


def compose_positions(c: Sequence[int], perm: Sequence[int]) -> tuple:
    """Move every person at position v to position perm[v]."""
    return tuple(perm[v] for v in c)


def apply_move(X: Graph, Y: Graph, c: Sequence[int], m: Move) -> tuple:
    a, b = m
    if not Y.has_edge(a, b):
        raise IllegalMove(f"positions {a} and {b} are not adjacent in Y")
    occ = occupants(c)
    p, q = occ[a], occ[b]
    if not X.has_edge(p, q):
        raise IllegalMove(f"persons {p} and {q} at ({a},{b}) are not friends in X")
    out = list(c)
    out[p], out[q] = b, a
    return tuple(out)


def replay(X: Graph, Y: Graph, start: Sequence[int], moves: Sequence[Move]) -> tuple:
    """Fold apply_move over moves; raises IllegalMove carrying the failing index."""
    c = list(start)
    occ = occupants(c)
    for i, (a, b) in enumerate(moves):
        if not Y.has_edge(a, b):
            raise IllegalMove(f"positions {a} and {b} are not adjacent in Y", i)
        p, q = occ[a], occ[b]
        if not X.has_edge(p, q):
            raise IllegalMove(f"persons {p} and {q} at ({a},{b}) are not friends in X", i)
        c[p], c[q] = b, a
        occ[a], occ[b] = q, p
    return tuple(c)


def inversions(c: Sequence[int]) -> int:
    n = len(c)
    return sum(1 for i in range(n) for j in range(i) if c[i] < c[j])


def parity(c: Sequence[int], ignore: Optional[int] = None) -> int:
    """0 for even, 1 for odd; persons equal to ``ignore`` are dropped first."""
    seq = [v for x, v in enumerate(c) if x != ignore]
    return inversions(seq) % 2


def invert_roles(X: Graph, Y: Graph, c: Sequence[int]):
    """The same instance seen as FS(Y, X): positions become people."""
    return Y, X, tuple(occupants(c))


def dual_moves(c: Sequence[int], moves: Sequence[Move], X: Graph, Y: Graph) -> list:
    """Translate a move list of FS(X, Y) starting at c into FS(Y, X)."""
    out = []
    occ = occupants(c)
    for a, b in moves:
        p, q = occ[a], occ[b]
        out.append((p, q))
        occ[a], occ[b] = q, p
    return out


# ------------------------------------------------------------ sequences

@dataclass
class MoveSequence:
    start: tuple
    moves: List[Move] = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def final(self, X: Graph, Y: Graph) -> tuple:
        return replay(X, Y, self.start, self.moves)


@dataclass
class SolveReport:
    reachable: bool
    sequence: Optional[MoveSequence]
    length: int
    bound_budget: int
    solver_id: str
    notes: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "reachable": self.reachable,
            "length": self.length,
            "bound_budget": self.bound_budget,
            "solver_id": self.solver_id,
            "moves": [list(m) for m in self.sequence.moves] if self.sequence else None,
        }


def report_ok(start, moves, budget, solver_id, **notes) -> SolveReport:
    moves = [tuple(m) for m in moves]
    return SolveReport(True, MoveSequence(tuple(start), moves), len(moves), budget, solver_id, dict(notes))


def report_unreachable(budget, solver_id, **notes) -> SolveReport:
    return SolveReport(False, None, 0, budget, solver_id, dict(notes))


# ------------------------------------------------------------ recognisers

def star_center(X: Graph) -> Optional[int]:
    """Center of X if X is a star (n >= 3), else None."""
    if X.n < 3 or len(X.edges) != X.n - 1:
        return None
    for v in range(X.n):
        if len(X.adj[v]) == X.n - 1:
            return v
    return None


def is_complete(X: Graph) -> bool:
    return len(X.edges) == X.n * (X.n - 1) // 2


# ------------------------------------------------------------ classification

def same_component(X: Graph, Y: Graph, c1: Sequence[int], c2: Sequence[int]):
    """Decide whether c2 is reachable from c1. Returns (verdict, certificate kind)."""
    c1 = check_config(c1, Y.n)
    c2 = check_config(c2, Y.n)
    if X.n != Y.n:
        raise ValueError("X and Y must have the same vertex count")
    if is_complete(X):
        for comp in components(Y):
            cs = set(comp)
            if {x for x in range(X.n) if c1[x] in cs} != {x for x in range(X.n) if c2[x] in cs}:
                return False, "kn-component-sets"
        return True, "kn-component-sets"
    if star_center(X) == 0 or (X.n <= 2 and is_complete(X)):
        from .star.solver import star_component_key
        return star_component_key(Y, c1) == star_component_key(Y, c2), "star-structure"
    import math
    if math.factorial(X.n) > state_budget():
        raise UnsupportedInstance("no classifier for this X and n exceeds the oracle budget")
    from .oracle import distance
    return distance(X, Y, c1, c2) is not None, "oracle"


# ------------------------------------------------------------ text formats

def parse_config(text: str) -> tuple:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 1:
        raise ValueError("configuration file must contain exactly one line of integers")
    return check_config(int(t) for t in lines[0].split())


def format_config(c: Sequence[int]) -> str:
    return " ".join(str(v) for v in c) + "\n"


def parse_moves(text: str) -> list:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split()[0] != "moves":
        raise ValueError("move file must start with a 'moves k' header")
    k = int(lines[0].split()[1])
    body = lines[1:]
    if len(body) != k:
        raise ValueError(f"header says {k} moves, found {len(body)}")
    out = []
    for ln in body:
        a, b = ln.split()
        out.append((int(a), int(b)))
    return out


def format_moves(moves: Sequence[Move]) -> str:
    lines = [f"moves {len(moves)}"] + [f"{a} {b}" for a, b in moves]
    return "\n".join(lines) + "\n"
