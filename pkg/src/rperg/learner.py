"""Rule learning by stack-based splitting of biconnected pieces.

Every cut vertex contributes a star rule whose size is the number of
blocks it joins. Every block with three or more vertices goes on a work
stack; a popped piece is either split at a separation pair (both halves go
back through block extraction) or, if it has none, counted as a rule.

Each stack entry carries a boundary pair: the edge through which the piece
hangs off the rest of its block. A root block is anchored at its smallest
edge; on a split the half holding the current boundary edge keeps it and
the other half is anchored at the split pair. An atomic piece uses its
boundary as the rule's external pair.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .canon import canonical_form, star_form
from .decomposition import _find_pair, _tarjan, split_at
from .errors import ContractError
from .grammar import Grammar
from .graph import Graph, connected_components
from .seeding import substream_seed

log = logging.getLogger(__name__)


@dataclass
class SqueezeTask:
    subgraph: Graph
    boundary: Tuple[int, int]
    # vertices u already known to leave subgraph - u biconnected
    cleared: Set[int] = field(default_factory=set)
    root: bool = False


@dataclass
class LearnConfig:
    virtual_both: bool = False
    seed: Optional[int] = None
    # draw split pairs uniformly at random instead of in scan order
    randomize_splits: bool = False
    jobs: int = 1


@dataclass
class LearnStats:
    pops: int = 0
    splits: int = 0
    atoms: int = 0
    stars: int = 0


def _blocks(g: Graph, boundary: Optional[Tuple[int, int]], grammar: Grammar, stats: LearnStats,
            cleared: Set[int]) -> List[SqueezeTask]:
    """Count star rules of ``g`` and return its non-bridge blocks as tasks."""
    cuts, blocks = _tarjan(g)
    if cuts:
        member = Counter(v for b in blocks for v in b if v in cuts)
        for v in sorted(cuts):
            grammar.add_form(star_form(member[v]))
            stats.stars += 1
    tasks = []
    for b in blocks:
        if len(b) < 3:
            continue  # bridge
        sub = g.subgraph(b) if len(blocks) > 1 else g
        if boundary is not None and boundary[0] in sub and sub.has_edge(*boundary):
            bd, root = boundary, False
        else:
            bd, root = sub.edges()[0], boundary is None
        # a vertex whose removal kept the parent biconnected does so for a block too
        tasks.append(SqueezeTask(sub, bd, cleared & set(b) if len(blocks) > 1 else set(cleared), root))
    return tasks


def _drain(stack: List[SqueezeTask], grammar: Grammar, cfg: LearnConfig,
           rng: Optional[random.Random], stats: LearnStats) -> None:
    while stack:
        task = stack.pop()
        stats.pops += 1
        g = task.subgraph
        pair = _find_pair(g, rng=rng, cleared=None if rng is not None else task.cleared)
        if pair is None:
            grammar.add_form(canonical_form(g, task.boundary))
            stats.atoms += 1
            continue
        stats.splits += 1
        a, b = pair
        g1, g2 = split_at(g, pair, cfg.virtual_both)
        p, q = task.boundary
        if {p, q} == {a, b}:
            bd1 = bd2 = (a, b)
        elif p in g1 and q in g1 and g1.has_edge(p, q):
            bd1, bd2 = (p, q), (a, b)
        else:
            bd1, bd2 = (a, b), (p, q)
        # g2 is biconnected by construction; so is g1 when it keeps the pair edge
        if cfg.virtual_both or g1.has_edge(a, b):
            stack.append(SqueezeTask(g1, bd1, task.cleared & set(g1)))
        else:
            # dropping the pair edge can create new separation pairs, so start afresh
            stack.extend(_blocks(g1, bd1, grammar, stats, set()))
        stack.append(SqueezeTask(g2, bd2, task.cleared & set(g2)))


def _learn_graph(g: Graph, cfg: LearnConfig, rng: Optional[random.Random]) -> Tuple[Grammar, LearnStats]:
    grammar = Grammar()
    stats = LearnStats()
    stack = _blocks(g, None, grammar, stats, set())
    _drain(stack, grammar, cfg, rng, stats)
    return grammar, stats


def _split_components(D: Iterable[Graph]) -> List[Graph]:
    parts = []
    for g in D:
        comps = connected_components(g)
        for c in comps:
            if len(c) >= 2:
                parts.append(g.subgraph(c) if len(comps) > 1 else g)
    return parts


def _worker(args):
    g, cfg, index = args
    rng = random.Random(substream_seed(cfg.seed, f"learn-{index}")) if cfg.randomize_splits else None
    return _learn_graph(g, cfg, rng)


def learn(D: Sequence[Graph], cfg: Optional[LearnConfig] = None) -> Grammar:
    """Learn a grammar from the graphs in ``D`` and estimate its probabilities.

    Disconnected graphs are split into their components, each treated as a
    separate training graph. Isolated vertices carry no edges and are skipped.
    """
    cfg = cfg or LearnConfig()
    if isinstance(D, Graph):
        D = [D]
    if not D:
        raise ContractError("learn needs at least one graph")
    parts = _split_components(D)
    if not parts:
        raise ContractError("training graphs have no edges")
    jobs = [(g, cfg, i) for i, g in enumerate(parts)]
    grammar = Grammar()
    total = LearnStats()
    if cfg.jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_worker, jobs))
    else:
        results = [_worker(j) for j in jobs]
    for gr, st in results:
        grammar.merge(gr)
        for k in vars(total):
            setattr(total, k, getattr(total, k) + getattr(st, k))
    log.info("learned %d rules: %d stars, %d atoms, %d splits", len(grammar), total.stars, total.atoms, total.splits)
    if not grammar.rules:
        # a forest of bridges has no rules; nothing to estimate
        log.warning("no rules learned: the training graphs are forests")
        return grammar
    return grammar.estimate_probabilities()


def rule_histogram(gr: Grammar) -> List[Tuple[str, int]]:
    """``(description, count)`` per rule, largest count first."""
    return [(r.describe(), r.count) for r in gr.ordered()]
