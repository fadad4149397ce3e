"""Stored catalog of every graph on at most 7 vertices, up to isomorphism."""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .graph import Graph, is_biconnected, is_connected

ATLAS = Path(__file__).with_name("data") / "atlas7.txt"


@lru_cache(maxsize=1)
def _all():
    out = []
    for ln in ATLAS.read_text().splitlines():
        if not ln.strip() or ln.startswith("#"):
            continue
        head, *es = ln.split()
        out.append(Graph(int(head), [tuple(map(int, e.split("-"))) for e in es]))
    return tuple(out)


def graphs(n: int, connected: bool = False, biconnected: bool = False) -> list:
    out = [g for g in _all() if g.n == n]
    if connected:
        out = [g for g in out if is_connected(g)]
    if biconnected:
        out = [g for g in out if is_biconnected(g)]
    return out
