"""Compiled inner loops for separation-pair search.

Graphs are passed in CSR form (``indptr``, ``indices``) over local indices
``0..n-1``.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def cut_vertices_without(indptr, indices, n, removed):
    """Articulation points of the graph with vertex ``removed`` deleted.

    Pass ``removed=-1`` to search the whole graph.
    """
    disc = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    it = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    is_cut = np.zeros(n, np.bool_)
    t = 0
    for root in range(n):
        if root == removed or disc[root] != -1:
            continue
        disc[root] = t
        low[root] = t
        t += 1
        it[root] = indptr[root]
        sp = 0
        stack[0] = root
        root_children = 0
        while sp >= 0:
            v = stack[sp]
            if it[v] < indptr[v + 1]:
                w = indices[it[v]]
                it[v] += 1
                if w == removed:
                    continue
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = t
                    low[w] = t
                    t += 1
                    it[w] = indptr[w]
                    sp += 1
                    stack[sp] = w
                    if v == root:
                        root_children += 1
                elif w != parent[v]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                sp -= 1
                if sp >= 0:
                    p = stack[sp]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != root and low[v] >= disc[p]:
                        is_cut[p] = True
        if root_children > 1:
            is_cut[root] = True
    return is_cut


@njit(cache=True)
def first_pair(indptr, indices, n, cleared):
    """First ``(u, v)`` in scan order such that ``v`` is a cut vertex of g - u.

    Vertices found not to participate are marked in ``cleared`` so later
    searches on descendants of this graph can skip them.
    """
    for u in range(n):
        if cleared[u]:
            continue
        cut = cut_vertices_without(indptr, indices, n, u)
        for v in range(n):
            if cut[v]:
                return u, v
        cleared[u] = True
    return -1, -1


@njit(cache=True)
def blocks(indptr, indices, n):
    """Cut vertices and blocks of the whole graph.

    Returns ``(is_cut, ptr, members)``: block ``k`` consists of the vertices
    ``members[ptr[k]:ptr[k + 1]]``.
    """
    disc = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    it = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    is_cut = np.zeros(n, np.bool_)
    m2 = indptr[n]
    estack_u = np.empty(m2, np.int64)
    estack_v = np.empty(m2, np.int64)
    mark = np.full(n, -1, np.int64)
    members = np.empty(m2 + n, np.int64)
    ptr = np.zeros(m2 + 1, np.int64)
    nb = 0
    nm = 0
    esp = 0
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = t
        low[root] = t
        t += 1
        it[root] = indptr[root]
        sp = 0
        stack[0] = root
        root_children = 0
        while sp >= 0:
            v = stack[sp]
            if it[v] < indptr[v + 1]:
                w = indices[it[v]]
                it[v] += 1
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = t
                    low[w] = t
                    t += 1
                    it[w] = indptr[w]
                    estack_u[esp] = v
                    estack_v[esp] = w
                    esp += 1
                    sp += 1
                    stack[sp] = w
                    if v == root:
                        root_children += 1
                elif w != parent[v] and disc[w] < disc[v]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                    estack_u[esp] = v
                    estack_v[esp] = w
                    esp += 1
            else:
                sp -= 1
                if sp >= 0:
                    p = stack[sp]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] >= disc[p]:
                        if p != root:
                            is_cut[p] = True
                        while True:
                            esp -= 1
                            a = estack_u[esp]
                            b = estack_v[esp]
                            if mark[a] != nb:
                                mark[a] = nb
                                members[nm] = a
                                nm += 1
                            if mark[b] != nb:
                                mark[b] = nb
                                members[nm] = b
                                nm += 1
                            if a == p and b == v:
                                break
                        nb += 1
                        ptr[nb] = nm
        if root_children > 1:
            is_cut[root] = True
    return is_cut, ptr[:nb + 1], members[:nm]
