"""Graph generation by repeated edge replacement.

``generate_ergm1`` adds a terminalisation rule with probability ``p`` and
derives until no non-terminal edge is left. ``generate_ergm2`` expands
until a vertex budget is met and then terminalises everything.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .errors import ContractError, GenerationError
from .grammar import Grammar, Rule
from .graph import Edge, Graph, norm_edge
from .seeding import substream_seed

log = logging.getLogger(__name__)

DEFAULT_RESTARTS = 100


class DerivationState:
    """Mutable graph under derivation with its set of non-terminal edges."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.adj: Dict[int, Set[int]] = {0: {1}, 1: {0}}
        self.n = 2
        self.m = 1
        # non-terminal edges in a list with an index map, for O(1) uniform pick and removal
        self._nt: List[Edge] = [(0, 1)]
        self._pos: Dict[Edge, int] = {(0, 1): 0}
        self.usage: Counter = Counter()
        self.merges = 0
        self.attempts = 1

    @property
    def nonterminal_edges(self) -> Set[Edge]:
        return set(self._nt)

    def nonterminal_count(self) -> int:
        return len(self._nt)

    def is_nonterminal(self, e: Edge) -> bool:
        return norm_edge(*e) in self._pos

    def pick_nonterminal(self) -> Edge:
        return self._nt[self.rng.randrange(len(self._nt))]

    def _mark(self, e: Edge) -> None:
        if e not in self._pos:
            self._pos[e] = len(self._nt)
            self._nt.append(e)

    def _unmark(self, e: Edge) -> None:
        i = self._pos.pop(e)
        last = self._nt.pop()
        if i < len(self._nt):
            self._nt[i] = last
            self._pos[last] = i

    def terminalize(self, e: Edge) -> None:
        e = norm_edge(*e)
        if e not in self._pos:
            raise ContractError(f"{e} is not a non-terminal edge")
        self._unmark(e)

    def terminalize_all(self) -> None:
        self._nt.clear()
        self._pos.clear()

    def apply_rule(self, e: Edge, rule: Rule) -> None:
        """Replace non-terminal edge ``e`` by a fresh copy of ``rule.rhs``."""
        u, v = norm_edge(*e)
        if (u, v) not in self._pos:
            raise ContractError(f"({u}, {v}) is not a non-terminal edge")
        self._unmark((u, v))
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

        a, b = rule.external
        if self.rng.random() < 0.5:
            u, v = v, u
        mapping = {a: u, b: v}
        for x in rule.rhs.vertices():
            if x not in mapping:
                mapping[x] = self.n
                self.adj[self.n] = set()
                self.n += 1
        for x, y in rule.rhs.edges():
            p, q = mapping[x], mapping[y]
            if q in self.adj[p]:
                # only the external pair can collide; keep one copy
                self.merges += 1
                log.debug("merged duplicate edge (%d, %d)", p, q)
                self._mark(norm_edge(p, q))
                continue
            self.adj[p].add(q)
            self.adj[q].add(p)
            self.m += 1
            self._mark(norm_edge(p, q))
        self.usage[rule.key] += 1

    def graph(self) -> Graph:
        return Graph({v: frozenset(nb) for v, nb in self.adj.items()}, self.m)


def apply_rule(st: DerivationState, e: Edge, rule: Rule) -> DerivationState:
    st.apply_rule(e, rule)
    return st


class _RuleSampler:
    def __init__(self, grammar: Grammar):
        if not grammar.rules:
            raise GenerationError("grammar has no rules")
        self.rules = grammar.ordered()
        w = np.array([r.prob for r in self.rules], float)
        if not np.all(np.isfinite(w)) or w.sum() <= 0:
            w = np.array([r.count for r in self.rules], float)
        if w.sum() <= 0:
            raise GenerationError("grammar has no rule with positive weight")
        self.cum = np.cumsum(w / w.sum()).tolist()
        self.cum[-1] = 1.0

    def sample(self, rng: random.Random) -> Rule:
        x = rng.random()
        lo, hi = 0, len(self.cum) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.cum[mid] > x:
                hi = mid
            else:
                lo = mid + 1
        return self.rules[lo]


def expected_rhs_edges(grammar: Grammar) -> float:
    total = sum(r.prob for r in grammar.rules.values()) or 1.0
    return sum(r.prob * r.rhs.m for r in grammar.rules.values()) / total


def default_max_edges(grammar: Grammar, p: float) -> int:
    """Ten times the expected size of a subcritical derivation, at least 1000."""
    mu = (1.0 - p) * expected_rhs_edges(grammar)
    if mu < 1.0:
        # expected total edges created from one edge in a subcritical branching process
        expected = 1.0 / (1.0 - mu)
        return max(1000, int(10 * expected))
    return 1000


def generate_ergm1(grammar: Grammar, p: float, seed: Optional[int] = None,
                   max_edges: Optional[int] = None, max_restarts: int = DEFAULT_RESTARTS,
                   return_state: bool = False):
    """Derive from a single edge until every edge is terminal.

    A uniformly chosen non-terminal edge becomes terminal with probability
    ``p``; otherwise it is replaced by a rule drawn by probability. When the
    graph passes ``max_edges`` edges the attempt is abandoned and restarted
    on a fresh random substream.
    """
    if not 0.0 < p < 1.0:
        raise ContractError(f"p must lie in (0, 1), got {p}")
    sampler = _RuleSampler(grammar)
    cap = max_edges if max_edges is not None else default_max_edges(grammar, p)
    for attempt in range(max_restarts + 1):
        st = DerivationState(random.Random(substream_seed(seed, f"ergm1-{attempt}")))
        while st.nonterminal_count():
            e = st.pick_nonterminal()
            if st.rng.random() < p:
                st.terminalize(e)
            else:
                st.apply_rule(e, sampler.sample(st.rng))
                if st.m > cap:
                    break
        else:
            st.attempts = attempt + 1
            return st if return_state else st.graph()
        log.debug("ergm1 attempt %d exceeded %d edges; restarting", attempt, cap)
    raise GenerationError(f"no derivation finished under {cap} edges in {max_restarts + 1} attempts")


def generate_ergm2(grammar: Grammar, target_n: int, seed: Optional[int] = None,
                   return_state: bool = False):
    """Expand random non-terminal edges until the graph has ``target_n`` vertices."""
    if target_n < 2:
        raise ContractError("target_n must be at least 2")
    sampler = _RuleSampler(grammar)
    if not any(r.rhs.n >= 3 for r in sampler.rules) and target_n > 2:
        raise GenerationError("grammar cannot grow: no rule adds vertices")
    st = DerivationState(random.Random(substream_seed(seed, "ergm2")))
    while st.n < target_n:
        e = st.pick_nonterminal()
        st.apply_rule(e, sampler.sample(st.rng))
    st.terminalize_all()
    return st if return_state else st.graph()
