"""Chung-Lu random graphs with a prescribed expected degree sequence."""
from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from .errors import ContractError
from .graph import Graph

log = logging.getLogger(__name__)

REDRAW_FACTOR = 10


def chung_lu(degrees: Sequence[int], seed: Optional[int] = None,
             rng: Optional[np.random.Generator] = None) -> Graph:
    """Sample ``sum(degrees) / 2`` edges with endpoints drawn proportionally to degree.

    Self-loops and repeated edges are rejected and redrawn; after
    ``REDRAW_FACTOR * m`` rejections the graph is returned with fewer edges.
    Vertices ``0..n-1`` are always present, isolated or not.
    """
    d = np.asarray(degrees, dtype=np.int64)
    n = len(d)
    if n < 2:
        raise ContractError("need at least two vertices")
    if np.any(d < 0):
        raise ContractError("degrees must be non-negative")
    total = int(d.sum())
    if total == 0:
        raise ContractError("degree sequence is all zeros")
    if total % 2:
        raise ContractError("degree sum must be even")
    m = total // 2
    if rng is None:
        rng = np.random.default_rng(seed)
    p = d / total
    edges = set()
    rejected = 0
    budget = REDRAW_FACTOR * m
    while len(edges) < m and rejected <= budget:
        need = m - len(edges)
        u = rng.choice(n, size=need, p=p)
        v = rng.choice(n, size=need, p=p)
        for a, b in zip(u.tolist(), v.tolist()):
            if a == b:
                rejected += 1
                continue
            e = (a, b) if a < b else (b, a)
            if e in edges:
                rejected += 1
                continue
            edges.add(e)
    if len(edges) < m:
        log.warning("chung-lu: gave up after %d rejections with %d of %d edges", rejected, len(edges), m)
    return Graph.from_edges(sorted(edges), range(n))
