"""Simple undirected graphs and SNAP-style edge-list I/O.

A :class:`Graph` is immutable once built. Vertex ids are plain ints; graphs
coming out of :func:`parse_edge_list` and :func:`largest_connected_component`
are compacted to ``0..n-1``, while subgraphs produced during decomposition
keep the ids of their host so split pairs can be tracked across pieces.
"""
from __future__ import annotations

import io
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import EdgeListError

log = logging.getLogger(__name__)

Edge = Tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph (no self-loops, no parallel edges)."""

    __slots__ = ("_adj", "_m")

    def __init__(self, adj: Dict[int, FrozenSet[int]], m: int):
        # trusted constructor; use from_edges() for unchecked input
        self._adj = adj
        self._m = m

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "Graph":
        """Build a graph; self-loops and repeated edges are discarded."""
        adj: Dict[int, set] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        m = sum(len(s) for s in adj.values()) // 2
        return cls({v: frozenset(s) for v, s in adj.items()}, m)

    @classmethod
    def empty(cls) -> "Graph":
        return cls({}, 0)

    # -- basic queries -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(frozenset(self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def vertices(self) -> List[int]:
        return sorted(self._adj)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def edges(self) -> List[Edge]:
        """All edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    @property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        return self._adj

    # -- derived graphs ----------------------------------------------------
    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        if 2 * len(keep) > len(self._adj):
            return self.without_vertices(self._adj.keys() - keep)
        adj = {v: self._adj[v] & keep for v in keep}
        return Graph(adj, sum(len(s) for s in adj.values()) // 2)

    def without_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Graph with ``vertices`` and their edges deleted.

        Costs time in the degrees of the deleted vertices plus one dict copy,
        so it beats :meth:`subgraph` when only a few vertices go.
        """
        drop = set(vertices) & self._adj.keys()
        if not drop:
            return self
        adj = dict(self._adj)
        touched = set()
        lost = 0
        for v in drop:
            nb = adj.pop(v)
            lost += len(nb)
            touched.update(nb)
        touched -= drop
        cross = 0
        for w in touched:
            kept = adj[w] - drop
            cross += len(adj[w]) - len(kept)
            adj[w] = kept
        # edges inside `drop` were counted twice in `lost`
        return Graph(adj, self._m - (lost + cross) // 2)

    def with_edge(self, u: int, v: int) -> "Graph":
        if self.has_edge(u, v):
            return self
        adj = dict(self._adj)
        adj[u] = adj.get(u, frozenset()) | {v}
        adj[v] = adj.get(v, frozenset()) | {u}
        return Graph(adj, self._m + 1)

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            return self
        adj = dict(self._adj)
        adj[u] = adj[u] - {v}
        adj[v] = adj[v] - {u}
        return Graph(adj, self._m - 1)

    def relabel(self, mapping: Dict[int, int]) -> "Graph":
        adj = {mapping[v]: frozenset(mapping[w] for w in nb) for v, nb in self._adj.items()}
        return Graph(adj, self._m)

    def compact(self) -> Tuple["Graph", Dict[int, int]]:
        """Relabel vertices to ``0..n-1`` preserving id order."""
        mapping = {v: i for i, v in enumerate(sorted(self._adj))}
        return self.relabel(mapping), mapping

    def is_compact(self) -> bool:
        return all(0 <= v < self.n for v in self._adj)


def connected_components(g: Graph) -> List[List[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    seen = set()
    comps = []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component, recompacted.

    Ties go to the component whose smallest vertex id is smallest.
    """
    if g.n == 0:
        return Graph.empty()
    comps = connected_components(g)
    best = max(comps, key=lambda c: (len(c), -c[0]))
    return g.subgraph(best).compact()[0]


def degree_sequence(g: Graph) -> List[int]:
    """Degrees indexed by vertex position in sorted id order."""
    return [g.degree(v) for v in g.vertices()]


# -- edge-list I/O ----------------------------------------------------------

@dataclass
class ParsedEdgeList:
    graph: Graph
    dropped: int = 0
    # original id for each compacted id
    original_ids: List[int] = field(default_factory=list)


def parse_edge_list(stream) -> ParsedEdgeList:
    """Parse a SNAP-style edge list.

    ``stream`` may be bytes, str, or a binary/text file object. Lines starting
    with ``#`` or ``%`` are comments; extra columns after the first two are
    ignored (KONECT files carry weights there). Self-loops and duplicate or
    reversed-duplicate edges are dropped and counted.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        stream = io.StringIO(stream)

    seen = set()
    edges = []
    dropped = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8", "replace") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) < 2:
            raise EdgeListError(f"expected two vertex ids, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer vertex id in {line!r}", lineno) from None
        if u == v:
            dropped += 1
            continue
        e = norm_edge(u, v)
        if e in seen:
            dropped += 1
            continue
        seen.add(e)
        edges.append(e)

    if dropped:
        log.warning("dropped %d self-loop/duplicate lines", dropped)
    ids = sorted({x for e in edges for x in e})
    index = {x: i for i, x in enumerate(ids)}
    g = Graph.from_edges(((index[u], index[v]) for u, v in edges), range(len(ids)))
    return ParsedEdgeList(g, dropped, ids)


def read_edge_list(path) -> ParsedEdgeList:
    with open(path, "rb") as fh:
        return parse_edge_list(fh)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
