"""Structural statistics for comparing generated graphs with an original.

Each metric returns a :class:`MetricReport` holding an ``(x, y)`` series,
a scalar, or both. Graphs are expected with ids ``0..n-1``; use
:meth:`Graph.compact` first when that is not the case.
"""
from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.stats import rankdata

from .errors import ContractError, ConvergenceError
from .graph import Graph, is_connected
from .graphlets import GCD11_ORBITS, orbit_counts

POWER_TOL = 1e-8
POWER_MAX_ITER = 100_000
DENSE_LIMIT = 600


@dataclass
class MetricReport:
    name: str
    series: List[Tuple[float, float]] = field(default_factory=list)
    scalar: Optional[float] = None
    meta: Dict[str, object] = field(default_factory=dict)


def _ensure_compact(g: Graph) -> Graph:
    return g if g.is_compact() else g.compact()[0]


def adjacency_matrix(g: Graph) -> sp.csr_matrix:
    g = _ensure_compact(g)
    n = g.n
    edges = np.array(g.edges(), np.int64).reshape(-1, 2)
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))


def triangle_counts(g: Graph) -> Dict[int, int]:
    """Number of triangles through each vertex."""
    adj = g.adjacency
    out = {v: 0 for v in adj}
    for u, v in g.edges():
        for w in adj[u] & adj[v]:
            if w > v:
                out[u] += 1
                out[v] += 1
                out[w] += 1
    return out


# -- degree ----------------------------------------------------------------

def degree_distribution(g: Graph) -> MetricReport:
    hist = Counter(g.degree(v) for v in g)
    return MetricReport("degree", [(float(k), float(c)) for k, c in sorted(hist.items())])


# -- principal eigenvector -------------------------------------------------

def principal_eigenvector(g: Graph, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER) -> Tuple[float, np.ndarray]:
    """Leading eigenpair of the adjacency matrix by power iteration.

    Iterates on ``A + I`` so bipartite graphs converge too. The vector has
    unit 2-norm and non-negative entries; the returned residual
    ``||A x - lambda x||`` is at most ``tol``.
    """
    A = adjacency_matrix(g)
    n = A.shape[0]
    if n == 0:
        raise ContractError("empty graph has no eigenvector")
    x = np.ones(n) / math.sqrt(n)
    res = math.inf
    for _ in range(max_iter):
        y = A @ x
        lam = float(x @ y)
        res = float(np.linalg.norm(y - lam * x))
        if res <= tol:
            break
        x = y + x
        x /= np.linalg.norm(x)
    else:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", res)
    if x.sum() < 0:
        x = -x
    return lam, x


def network_values(g: Graph) -> MetricReport:
    """Principal eigenvector components sorted in descending order against rank."""
    if not is_connected(g):
        raise ContractError("network values need a connected graph")
    lam, x = principal_eigenvector(g)
    vals = np.sort(x)[::-1]
    return MetricReport("network_values", [(float(i + 1), float(v)) for i, v in enumerate(vals)],
                        meta={"eigenvalue": lam})


def _sorted_centrality(g: Graph) -> np.ndarray:
    return np.array([y for _, y in network_values(g).series])


def cosine_distance_sorted(a: np.ndarray, b: np.ndarray) -> float:
    k = min(len(a), len(b))
    a, b = a[:k], b[:k]
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 1.0
    return float(max(0.0, 1.0 - float(a @ b) / (na * nb)))


def network_value_distance(g1: Graph, g2: Graph) -> float:
    """One minus the cosine similarity of the two sorted centrality vectors."""
    return cosine_distance_sorted(_sorted_centrality(g1), _sorted_centrality(g2))


# -- hop plot --------------------------------------------------------------

def hop_plot(g: Graph, samples: int = 50, seed: Optional[int] = None) -> MetricReport:
    """Cumulative count of vertices within ``x`` hops, summed over sampled sources."""
    verts = g.vertices()
    rng = random.Random(seed)
    sources = verts if samples >= len(verts) else sorted(rng.sample(verts, samples))
    within = Counter()
    adj = g.adjacency
    for s in sources:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        for d in dist.values():
            if d > 0:
                within[d] += 1
    series = []
    total = 0
    for x in range(1, max(within, default=0) + 1):
        total += within[x]
        series.append((float(x), float(total)))
    return MetricReport("hop_plot", series, meta={"samples": len(sources), "seed": seed})


# -- clustering ------------------------------------------------------------

def local_clustering(g: Graph) -> Dict[int, float]:
    tri = triangle_counts(g)
    out = {}
    for v in g:
        d = g.degree(v)
        out[v] = 2.0 * tri[v] / (d * (d - 1)) if d >= 2 else 0.0
    return out


def clustering_by_degree(g: Graph) -> MetricReport:
    cc = local_clustering(g)
    by_deg: Dict[int, List[float]] = {}
    for v, c in cc.items():
        by_deg.setdefault(g.degree(v), []).append(c)
    series = [(float(k), float(np.mean(cs))) for k, cs in sorted(by_deg.items())]
    mean = float(np.mean(list(cc.values()))) if cc else 0.0
    return MetricReport("clustering", series, scalar=mean)


# -- spectrum --------------------------------------------------------------

def scree(g: Graph, k: int = 50) -> MetricReport:
    """Largest-magnitude adjacency eigenvalues, listed in descending order."""
    n = g.n
    k = min(k, n)
    if k <= 0:
        return MetricReport("scree")
    A = adjacency_matrix(g)
    meta: Dict[str, object] = {"k": k}
    if n <= DENSE_LIMIT or k >= n - 1:
        vals = np.linalg.eigvalsh(A.toarray())
        vals = vals[np.argsort(-np.abs(vals), kind="stable")[:k]]
    else:
        try:
            vals = eigsh(A, k=k, which="LM", return_eigenvectors=False, tol=1e-10)
        except ArpackNoConvergence as exc:
            vals = exc.eigenvalues
            meta["partial"] = True
    vals = np.sort(np.asarray(vals, float))[::-1]
    return MetricReport("scree", [(float(i + 1), float(v)) for i, v in enumerate(vals)], meta=meta)


# -- triangles -------------------------------------------------------------

def triangle_participation(g: Graph) -> MetricReport:
    """For each triangle count ``t >= 1``, the number of vertices in exactly ``t`` triangles."""
    hist = Counter(t for t in triangle_counts(g).values() if t >= 1)
    return MetricReport("triangle_participation", [(float(t), float(c)) for t, c in sorted(hist.items())])


# -- graphlet correlation --------------------------------------------------

def spearman_matrix(X: np.ndarray) -> np.ndarray:
    """Spearman correlation of the columns of ``X`` with mid-ranks for ties.

    A constant column correlates 1 with itself and 0 with every other column.
    """
    X = np.asarray(X, float)
    k = X.shape[1]
    R = np.column_stack([rankdata(X[:, j]) for j in range(k)]) if X.shape[0] else np.zeros((0, k))
    R = R - R.mean(axis=0) if len(R) else R
    norms = np.sqrt((R * R).sum(axis=0))
    out = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            if norms[i] > 0 and norms[j] > 0:
                out[i, j] = out[j, i] = float(R[:, i] @ R[:, j]) / (norms[i] * norms[j])
    return out


def graphlet_correlation_matrix(g: Graph) -> np.ndarray:
    O = orbit_counts(_ensure_compact(g))
    return spearman_matrix(O[:, list(GCD11_ORBITS)])


def gcd_from_matrices(m1: np.ndarray, m2: np.ndarray) -> float:
    iu = np.triu_indices(m1.shape[0], 1)
    return float(np.linalg.norm(m1[iu] - m2[iu]))


def gcd(g1: Graph, g2: Graph) -> float:
    """Graphlet correlation distance over the 11 non-redundant orbits."""
    if g1.n == 0 or g2.n == 0:
        raise ContractError("graphlet correlation needs non-empty graphs")
    return gcd_from_matrices(graphlet_correlation_matrix(g1), graphlet_correlation_matrix(g2))


# -- bundles ---------------------------------------------------------------

SERIES_METRICS = ("degree", "hop_plot", "clustering", "scree", "triangle_participation", "network_values")


def all_metrics(g: Graph, seed: Optional[int] = None, hop_samples: int = 50, scree_k: int = 50) -> List[MetricReport]:
    g = _ensure_compact(g)
    reports = [degree_distribution(g), hop_plot(g, hop_samples, seed), clustering_by_degree(g),
               scree(g, scree_k), triangle_participation(g)]
    if is_connected(g):
        reports.append(network_values(g))
    return reports
