"""Canonical keys for rule right-hand sides.

Two RHS graphs get the same key exactly when an isomorphism maps one onto
the other and carries the (unordered) external pair onto the external pair.
Graphs up to :data:`EXACT_LIMIT` vertices are canonised exactly by colour
refinement plus an individualisation search with automorphism pruning.
Larger graphs get a structural fingerprint instead; keys of the two kinds
never collide because they carry different prefixes.
"""
from __future__ import annotations

import hashlib
import logging
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ContractError
from .graph import Graph

log = logging.getLogger(__name__)

EXACT_LIMIT = 64
REFINE_BUDGET = 50_000

EXACT_PREFIX = b"X"
FINGERPRINT_PREFIX = b"F"


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    n: int
    # edges over canonical labels; externals are labels 0 and 1
    edges: Tuple[Tuple[int, int], ...]
    fingerprint_only: bool = False

    @property
    def graph(self) -> Graph:
        return Graph.from_edges(self.edges, range(self.n))


def _digest(prefix: bytes, ints: Sequence[int]) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    h.update(struct.pack(f"<{len(ints)}q", *ints))
    return prefix + h.digest()


# -- colour refinement ----------------------------------------------------------

def _refine(adj: List[List[int]], colors: List[int]) -> List[int]:
    """Coarsest equitable refinement; cell order is isomorphism invariant."""
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _individualize(colors: List[int], v: int) -> List[int]:
    c = colors[v]
    return [2 * x + (1 if x == c and u != v else 0) for u, x in enumerate(colors)]


class _Search:
    def __init__(self, adj: List[List[int]], edges: List[Tuple[int, int]]):
        self.adj = adj
        self.edges = edges
        self.n = len(adj)
        self.first_path: List[int] = []
        self.first_cert = None
        self.first_labels: Optional[List[int]] = None
        self.best_cert = None
        self.best_labels: Optional[List[int]] = None
        self.generators: List[Tuple[int, List[int]]] = []  # (fixed prefix length, perm)
        self.leaves = 0
        self.refinements = 0

    def certificate(self, labels: List[int]):
        return tuple(sorted((labels[u], labels[v]) if labels[u] < labels[v] else (labels[v], labels[u])
                            for u, v in self.edges))

    def run(self, colors: List[int]) -> None:
        self._visit(colors, [], on_first=True)

    def _orbit_roots(self, level: int, cell: List[int]) -> Dict[int, int]:
        parent = {v: v for v in range(self.n)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for depth, perm in self.generators:
            if depth < level:
                continue
            for x in cell:
                ra, rb = find(x), find(perm[x])
                if ra != rb:
                    parent[ra] = rb
        return {x: find(x) for x in cell}

    def _visit(self, colors: List[int], path: List[int], on_first: bool) -> int:
        """Returns the level to unwind to (len(path) means keep going)."""
        colors = _refine(self.adj, colors)
        level = len(path)
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == self.n:
            return self._leaf(colors, path, on_first)
        if self._uniform(colors, cells):
            # every ordering inside the cells yields the same certificate
            order = sorted(range(self.n), key=lambda v: (colors[v], v))
            labels = [0] * self.n
            for i, v in enumerate(order):
                labels[v] = i
            return self._leaf(labels, path, on_first)
        self.refinements += 1
        if self.refinements > REFINE_BUDGET:
            raise _BudgetExceeded
        target = cells[min(c for c, vs in cells.items() if len(vs) > 1)]
        tried: List[int] = []
        for i, w in enumerate(target):
            if on_first and tried:
                roots = self._orbit_roots(level, target)
                if any(roots[w] == roots[t] for t in tried):
                    continue
            first_child = on_first and i == 0
            back = self._visit(_individualize(colors, w), path + [w], first_child)
            tried.append(w)
            if back < level:
                return back
        return level

    def _uniform(self, colors: List[int], cells: Dict[int, List[int]]) -> bool:
        """Each cell pair (incl. a cell with itself) is fully joined or fully disjoint."""
        sizes = {c: len(vs) for c, vs in cells.items()}
        for c, vs in cells.items():
            profile = None
            for v in vs:
                counts: Dict[int, int] = {}
                for w in self.adj[v]:
                    counts[colors[w]] = counts.get(colors[w], 0) + 1
                if profile is None:
                    profile = counts
                    for d, k in counts.items():
                        full = sizes[d] - (1 if d == c else 0)
                        if k != full:
                            return False
                elif counts != profile:
                    return False
        return True

    def _leaf(self, labels: List[int], path: List[int], on_first: bool) -> int:
        self.leaves += 1
        cert = self.certificate(labels)
        if on_first:
            self.first_path = list(path)
            self.first_cert, self.first_labels = cert, labels
            self.best_cert, self.best_labels = cert, labels
            return len(path)
        if cert == self.first_cert:
            # automorphism mapping this leaf onto the first leaf
            inv = [0] * self.n
            for v, lab in enumerate(self.first_labels):
                inv[lab] = v
            perm = [inv[labels[v]] for v in range(self.n)]
            depth = 0
            while depth < len(path) and depth < len(self.first_path) and path[depth] == self.first_path[depth]:
                depth += 1
            self.generators.append((depth, perm))
            return depth
        if cert < self.best_cert:
            self.best_cert, self.best_labels = cert, labels
        return len(path)


class _BudgetExceeded(Exception):
    pass


def _local(rhs: Graph, external: Tuple[int, int]):
    a, b = external
    if a == b:
        raise ContractError("external vertices must be distinct")
    if a not in rhs or b not in rhs:
        raise ContractError(f"external pair ({a}, {b}) is not in the graph")
    verts = rhs.vertices()
    index = {v: i for i, v in enumerate(verts)}
    adj = [sorted(index[w] for w in rhs.neighbors(v)) for v in verts]
    edges = [(index[u], index[v]) for u, v in rhs.edges()]
    return verts, index, adj, edges, (index[a], index[b])


def _fingerprint(rhs: Graph, external: Tuple[int, int]) -> CanonicalForm:
    a, b = external
    adj = rhs.adjacency
    degs = sorted(len(nb) for nb in adj.values())
    ext = sorted((len(adj[a]), len(adj[b])))
    tri = sum(len(adj[u] & adj[v]) for u, v in rhs.edges()) // 3
    key = _digest(FINGERPRINT_PREFIX, [rhs.n, rhs.m, *degs, *ext, tri])
    # representative labelling: externals first, then the rest by id
    order = [a, b] + [v for v in rhs.vertices() if v not in (a, b)]
    lab = {v: i for i, v in enumerate(order)}
    edges = tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v in rhs.edges()))
    return CanonicalForm(key, rhs.n, edges, fingerprint_only=True)


def canonical_form(rhs: Graph, external: Tuple[int, int]) -> CanonicalForm:
    """Canonical labelling of ``rhs`` with its external pair mapped to labels 0 and 1."""
    verts, index, adj, edges, (ea, eb) = _local(rhs, external)
    n = len(verts)
    if n > EXACT_LIMIT:
        return _fingerprint(rhs, external)
    colors = [0 if v in (ea, eb) else 1 for v in range(n)]
    search = _Search(adj, edges)
    try:
        search.run(colors)
    except _BudgetExceeded:
        log.warning("canonical search budget exceeded (n=%d, m=%d); using fingerprint", n, len(edges))
        return _fingerprint(rhs, external)
    cert = search.best_cert
    key = _digest(EXACT_PREFIX, [n, len(cert), *(x for e in cert for x in e)])
    return CanonicalForm(key, n, cert)


def canonical_key(rhs: Graph, external: Tuple[int, int]) -> bytes:
    """Isomorphism-invariant key of ``rhs`` respecting the unordered external pair."""
    return canonical_form(rhs, external).key


def star_graph(k: int) -> Graph:
    """Star with centre 0 and leaves ``1..k`` (``k + 1`` vertices)."""
    return Graph.from_edges((0, i) for i in range(1, k + 1))


@lru_cache(maxsize=None)
def star_form(k: int) -> CanonicalForm:
    if k < 2:
        raise ContractError("a star rule needs at least two leaves")
    return canonical_form(star_graph(k), (1, 2))


def star_key(k: int) -> bytes:
    return star_form(k).key
