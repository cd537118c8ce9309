"""Per-vertex orbit counts for connected graphlets on 2 to 4 vertices.

Orbits are numbered 0..14 in the usual way: 0 edge; 1, 2 path on three
vertices (end, middle); 3 triangle; 4, 5 path on four vertices (end,
middle); 6, 7 claw (leaf, centre); 8 four-cycle; 9, 10, 11 paw (tail end,
degree-2 triangle vertex, degree-3 vertex); 12, 13 diamond (degree 2,
degree 3); 14 four-clique.

Counts are for induced graphlets. The fast path first counts
non-induced occurrences with sparse-matrix identities and then removes
the overcount with a small inclusion matrix; :func:`orbit_counts_bruteforce`
enumerates vertex subsets directly and serves as the reference.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .graph import Graph

N_ORBITS = 15
# the 11 non-redundant orbits used by GCD-11
GCD11_ORBITS = (0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11)


def classify(edges: Sequence[Tuple[int, int]], v: int) -> int:
    """Orbit of ``v`` in the connected graphlet spanned by ``edges``."""
    deg: Dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    k, m, d = len(deg), len(edges), deg[v]
    if k == 2:
        return 0
    if k == 3:
        return 3 if m == 3 else (1 if d == 1 else 2)
    if m == 3:
        if max(deg.values()) == 3:
            return 7 if d == 3 else 6
        return 4 if d == 1 else 5
    if m == 4:
        if max(deg.values()) == 2:
            return 8
        return {1: 9, 2: 10, 3: 11}[d]
    if m == 5:
        return 12 if d == 2 else 13
    return 14


def _connected(vs, edges) -> bool:
    vs = list(vs)
    seen = {vs[0]}
    frontier = [vs[0]]
    while frontier:
        x = frontier.pop()
        for a, b in edges:
            for p, q in ((a, b), (b, a)):
                if p == x and q not in seen:
                    seen.add(q)
                    frontier.append(q)
    return len(seen) == len(vs)


@lru_cache(maxsize=None)
def inclusion_matrix() -> np.ndarray:
    """``M[j, k]``: spanning sub-graphlets with ``v`` in orbit j inside induced orbit k.

    Rows and columns cover orbits 4..14 (index ``orbit - 4``).
    """
    reps = {
        4: [(0, 1), (1, 2), (2, 3)],
        5: [(0, 1), (0, 2), (2, 3)],
        6: [(0, 1), (1, 2), (1, 3)],
        7: [(0, 1), (0, 2), (0, 3)],
        8: [(0, 1), (1, 2), (2, 3), (3, 0)],
        9: [(0, 1), (1, 2), (2, 3), (3, 1)],
        10: [(0, 1), (0, 2), (1, 2), (1, 3)],
        11: [(0, 1), (0, 2), (1, 2), (0, 3)],
        12: [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
        13: [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
        14: [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    }
    M = np.zeros((11, 11), np.int64)
    for k, edges in reps.items():
        assert classify(edges, 0) == k
        for r in range(3, len(edges) + 1):
            for sub in combinations(edges, r):
                if len({x for e in sub for x in e}) == 4 and _connected(range(4), sub):
                    M[classify(sub, 0) - 4, k - 4] += 1
    return M


def _adjacency(g: Graph) -> sp.csr_matrix:
    n = g.n
    edges = np.array(g.edges(), np.int64).reshape(-1, 2)
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    return sp.csr_matrix((np.ones(len(rows), np.int64), (rows, cols)), shape=(n, n))


def _k4_counts(g: Graph, A: sp.csr_matrix) -> np.ndarray:
    n = g.n
    out = np.zeros(n, np.int64)
    nbrs = [A.indices[A.indptr[v]:A.indptr[v + 1]] for v in range(n)]
    higher = [set(x[x > v].tolist()) for v, x in enumerate(nbrs)]
    for x in range(n):
        hx = higher[x]
        for y in hx:
            s = hx & higher[y]
            for w in s:
                for z in s & higher[w]:
                    out[x] += 1
                    out[y] += 1
                    out[w] += 1
                    out[z] += 1
    return out


def orbit_counts(g: Graph) -> np.ndarray:
    """``n x 15`` matrix of induced orbit counts; ``g`` must have ids ``0..n-1``."""
    if not g.is_compact():
        raise ValueError("orbit_counts expects vertex ids 0..n-1")
    n = g.n
    O = np.zeros((n, N_ORBITS), np.int64)
    if n == 0 or g.m == 0:
        return O
    A = _adjacency(g)
    d = np.asarray(A.sum(axis=1)).ravel().astype(np.int64)
    A2 = (A @ A).tocsr()
    C = A2.multiply(A).tocsr()  # common neighbours on edges
    t = np.asarray(C.sum(axis=1)).ravel() // 2
    dm1 = d - 1
    Ad1 = A @ dm1

    O[:, 0] = d
    O[:, 1] = Ad1 - 2 * t
    O[:, 2] = d * (d - 1) // 2 - t
    O[:, 3] = t

    N = np.zeros((n, 11), np.int64)
    N[:, 0] = A @ Ad1 - d * dm1 - 2 * t
    N[:, 1] = dm1 * Ad1 - 2 * t
    N[:, 2] = A @ (dm1 * (dm1 - 1) // 2)
    N[:, 3] = d * (d - 1) * (d - 2) // 6
    # four-cycles: pairs of 2-paths to the same far vertex
    A2off = A2.copy()
    A2off.setdiag(0)
    A2off.eliminate_zeros()
    pairs = A2off.copy()
    pairs.data = pairs.data * (pairs.data - 1) // 2
    N[:, 4] = np.asarray(pairs.sum(axis=1)).ravel()
    N[:, 5] = A @ t - 2 * t
    N[:, 6] = C @ (d - 2)
    N[:, 7] = t * (d - 2)
    W = C.copy()
    W.data = W.data - 1
    N[:, 8] = np.asarray((A @ W).multiply(A).sum(axis=1)).ravel() // 2
    Cc = C.copy()
    Cc.data = Cc.data * (Cc.data - 1) // 2
    N[:, 9] = np.asarray(Cc.sum(axis=1)).ravel()
    N[:, 10] = _k4_counts(g, A)

    # back-substitute through the unit upper-triangular inclusion matrix
    M = inclusion_matrix()
    ind = np.zeros_like(N)
    for j in range(10, -1, -1):
        ind[:, j] = N[:, j] - ind[:, j + 1:] @ M[j, j + 1:]
    O[:, 4:] = ind
    return O


def orbit_counts_bruteforce(g: Graph) -> np.ndarray:
    """Reference counts by enumerating every connected 2-, 3- and 4-vertex subset."""
    if not g.is_compact():
        raise ValueError("orbit_counts expects vertex ids 0..n-1")
    n = g.n
    O = np.zeros((n, N_ORBITS), np.int64)
    adj = g.adjacency
    for k in (2, 3, 4):
        for vs in combinations(range(n), k):
            edges = [(a, b) for a, b in combinations(vs, 2) if b in adj[a]]
            if len(edges) < k - 1 or not _connected(vs, edges):
                continue
            for v in vs:
                O[v, classify(edges, v)] += 1
    return O
