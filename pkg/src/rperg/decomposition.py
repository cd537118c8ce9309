"""Cut vertices, blocks, separation pairs and the split step of rule learning.

Also hosts a brute-force squeeze oracle used only by tests to cross-check
the learner on small graphs.
"""
from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from . import _kernels
from .errors import ContractError
from .graph import Graph, connected_components, is_connected, norm_edge


@dataclass(frozen=True, order=True)
class SeparationPair:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    def __iter__(self):
        return iter((self.a, self.b))


# -- cut vertices and blocks ------------------------------------------------

def _tarjan(g: Graph) -> Tuple[Set[int], List[List[int]]]:
    """Cut vertices and blocks (sorted vertex lists, sorted) in O(n + m)."""
    if g.n == 0:
        return set(), []
    verts, indptr, indices = _csr(g)
    is_cut, ptr, members = _kernels.blocks(indptr, indices, len(verts))
    cuts = {verts[i] for i in np.flatnonzero(is_cut)}
    mem = members.tolist()
    blocks = sorted(sorted(verts[i] for i in mem[ptr[k]:ptr[k + 1]]) for k in range(len(ptr) - 1))
    return cuts, blocks


def articulation_points(g: Graph) -> Set[int]:
    """Vertices whose removal disconnects their component. O(n + m)."""
    return _tarjan(g)[0]


def biconnected_components(g: Graph) -> List[Tuple[Graph, List[int]]]:
    """Blocks of ``g`` as ``(subgraph, sorted vertex list)``, ordered by vertex list.

    Every edge lies in exactly one block; bridges come out as 2-vertex
    blocks and cut vertices appear in several blocks.
    """
    return [(g.subgraph(b), b) for b in _tarjan(g)[1]]


def is_biconnected(g: Graph) -> bool:
    if g.n < 3:
        return g.n == 2 and g.m == 1
    cuts, blocks = _tarjan(g)
    return not cuts and len(blocks) == 1 and len(blocks[0]) == g.n


# -- separation pairs ---------------------------------------------------------

def _csr(g: Graph):
    verts = g.vertices()
    index = {v: i for i, v in enumerate(verts)}
    adj = g.adjacency
    indptr = np.zeros(len(verts) + 1, np.int64)
    np.cumsum([len(adj[v]) for v in verts], out=indptr[1:])
    indices = np.fromiter((index[w] for v in verts for w in adj[v]), np.int64, 2 * g.m)
    return verts, indptr, indices


def _check_biconnected(g: Graph) -> None:
    if g.n < 3 or not is_biconnected(g):
        raise ContractError("separation pairs are defined on biconnected graphs with >= 3 vertices")


def all_separation_pairs(g: Graph) -> List[SeparationPair]:
    """Every separation pair of a biconnected graph, sorted."""
    _check_biconnected(g)
    return _all_pairs(g)


def _all_pairs(g: Graph) -> List[SeparationPair]:
    if g.n <= 3:
        return []
    verts, indptr, indices = _csr(g)
    n = len(verts)
    pairs = []
    for u in range(n):
        cut = _kernels.cut_vertices_without(indptr, indices, n, u)
        pairs.extend(SeparationPair(verts[u], verts[v]) for v in np.flatnonzero(cut[u + 1:]) + u + 1)
    return pairs


def find_separation_pair(g: Graph, rng: Optional[random.Random] = None) -> Optional[SeparationPair]:
    """Some separation pair of ``g``, or None when ``g`` is a triangle or triconnected.

    Deterministic by default: the smallest-id vertex of degree two yields the
    pair of its neighbours; failing that, vertices ``u`` are scanned in id
    order and the first cut vertex of ``g - u`` completes the pair. With
    ``rng`` a pair is drawn uniformly from all separation pairs instead.
    """
    _check_biconnected(g)
    return _find_pair(g, rng=rng)


def _find_pair(g: Graph, rng: Optional[random.Random] = None,
               cleared: Optional[Set[int]] = None) -> Optional[SeparationPair]:
    # `cleared` holds vertices u already known to leave g - u biconnected;
    # it is extended in place with newly cleared vertices.
    if g.n <= 3:
        return None
    if rng is not None:
        pairs = _all_pairs(g)
        return rng.choice(pairs) if pairs else None

    adj = g.adjacency
    x = min((v for v, nb in adj.items() if len(nb) == 2), default=None)
    if x is not None:
        a, b = adj[x]
        return SeparationPair(a, b)

    verts, indptr, indices = _csr(g)
    mask = np.zeros(len(verts), np.bool_)
    if cleared:
        for i, v in enumerate(verts):
            if v in cleared:
                mask[i] = True
    u, v = _kernels.first_pair(indptr, indices, len(verts), mask)
    if cleared is not None:
        cleared.update(verts[i] for i in np.flatnonzero(mask))
    if u < 0:
        return None
    return SeparationPair(verts[u], verts[v])


def components_without(g: Graph, removed) -> List[Set[int]]:
    """Components of ``g`` minus the vertices in ``removed``, by smallest vertex."""
    removed = set(removed)
    adj = g.adjacency
    seen = set(removed)
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def _component_of_smallest(g: Graph, removed) -> Set[int]:
    adj = g.adjacency
    s = min(v for v in adj if v not in removed)
    comp = {s}
    seen = set(removed) | comp
    queue = deque([s])
    while queue:
        for w in adj[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                comp.add(w)
                queue.append(w)
    return comp


def split_at(g: Graph, pair: SeparationPair, virtual_both: bool = False) -> Tuple[Graph, Graph]:
    """Split ``g`` at a separation pair ``(a, b)``.

    ``g1`` is induced on ``{a, b}`` plus the component of ``g - {a, b}`` that
    holds the smallest vertex id; ``g2`` on ``{a, b}`` plus all the other
    components. ``g2`` always carries the edge ``(a, b)``, added as a virtual
    edge when ``g`` lacks it. With ``virtual_both`` ``g1`` carries it as well,
    whether it is real or virtual; otherwise ``g1`` never has it.
    """
    a, b = pair
    if a not in g or b not in g:
        raise ContractError(f"({a}, {b}) is not a vertex pair of the graph")
    first = _component_of_smallest(g, (a, b))
    if len(first) + 2 >= g.n:
        raise ContractError(f"({a}, {b}) is not a separation pair")
    g1 = g.subgraph(first | {a, b})
    g2 = g.without_vertices(first)
    if virtual_both:
        g1 = g1.with_edge(a, b)
        g2 = g2.with_edge(a, b)
    else:
        g1 = g1.without_edge(a, b)
        g2 = g2.with_edge(a, b)
    return g1, g2


# -- brute-force squeeze oracle ----------------------------------------------

def admissible_squeezes(g: Graph) -> Iterator[Tuple[int, int, Set[int]]]:
    """Non-trivial squeezes ``(u, v, C)`` of ``g``.

    ``C`` is one of at least two components of ``g - {u, v}`` and must touch
    both ``u`` and ``v``; replacing it by the edge ``(u, v)`` strictly shrinks
    the graph. Brute force over all vertex pairs.
    """
    adj = g.adjacency
    for u, v in combinations(sorted(adj), 2):
        comps = components_without(g, (u, v))
        if len(comps) < 2:
            continue
        for comp in comps:
            if adj[u] & comp and adj[v] & comp:
                yield u, v, comp


def is_non_squeezable(g: Graph) -> bool:
    """True when ``g`` admits no non-trivial squeeze (brute force)."""
    return next(admissible_squeezes(g), None) is None


def _brute_cut_vertices(g: Graph) -> Dict[int, int]:
    """Cut vertex -> number of components left after deleting it."""
    out = {}
    for c in g.vertices():
        k = len(components_without(g, (c,)))
        if k >= 2:
            out[c] = k
    return out


def _brute_blocks(g: Graph) -> List[Set[int]]:
    # two edges share a block iff no single vertex deletion separates them
    verts = g.vertices()
    label = {}
    for w in verts:
        comp_of = {}
        for i, comp in enumerate(components_without(g, (w,))):
            for x in comp:
                comp_of[x] = i
        label[w] = comp_of
    edges = g.edges()

    def side(e, w):
        x = e[1] if e[0] == w else e[0]
        return label[w][x]

    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(edges)), 2):
        if all(side(edges[i], w) == side(edges[j], w) for w in verts):
            parent[find(i)] = find(j)
    groups: Dict[int, Set[int]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), set()).update(e)
    return sorted(groups.values(), key=min)


def squeeze_minors_oracle(g: Graph, seed=None) -> Counter:
    """Multiset of squeeze-minor rule keys found by random successive squeezing.

    Each cut vertex contributes a star with one leaf per component left by
    deleting it. Within every block of three or more vertices, random
    admissible squeezes whose removed part is itself non-squeezable are
    applied until none remain; the squeezed atom is recorded with the
    squeeze pair as its external pair and the final atom with the block's
    smallest edge. Atoms that would swallow that anchor edge are never
    squeezed, so every block is rooted at it. Test oracle only: brute force,
    restricted to at most 30 vertices.
    """
    from .canon import canonical_key, star_key

    if g.n > 30:
        raise ContractError("oracle is limited to graphs with at most 30 vertices")
    if not is_connected(g) or g.m == 0:
        raise ContractError("oracle needs a connected graph with at least one edge")
    rng = random.Random(seed)
    out: Counter = Counter()
    for _, k in sorted(_brute_cut_vertices(g).items()):
        out[star_key(k)] += 1

    for block in _brute_blocks(g):
        if len(block) < 3:
            continue
        piece = g.subgraph(block)
        anchor = piece.edges()[0]
        while True:
            options = []
            for u, v, comp in admissible_squeezes(piece):
                atom_vertices = comp | {u, v}
                if set(anchor) <= atom_vertices and set(anchor) != {u, v}:
                    continue
                atom = piece.subgraph(atom_vertices).with_edge(u, v)
                if is_non_squeezable(atom):
                    options.append((u, v, comp, atom))
            if not options:
                break
            u, v, comp, atom = rng.choice(options)
            out[canonical_key(atom, (u, v))] += 1
            piece = piece.subgraph(set(piece) - comp).with_edge(u, v)
        if not is_non_squeezable(piece):
            raise AssertionError("squeezing stalled on a squeezable piece")
        out[canonical_key(piece, anchor)] += 1
    return out
