"""Learn, generate and evaluate in one pass.

Mirrors the usual protocol: learn a grammar from the input graph, draw
``count`` graphs from each generator, compute every metric on each, and
average the series across draws.
"""
from __future__ import annotations

import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import metrics as M
from .baseline import chung_lu
from .generator import generate_ergm1, generate_ergm2
from .grammar import Grammar
from .graph import Graph, degree_sequence, largest_connected_component
from .learner import LearnConfig, learn
from .seeding import np_rng, substream_seed

log = logging.getLogger(__name__)

GENERATORS = ("rperg", "rperg-ergm1", "chung-lu")


@dataclass
class RunScores:
    generator: str
    index: int
    n: int
    m: int
    gcd: float
    cosine: float
    clustering: float


@dataclass
class CompareResult:
    original: Dict[str, M.MetricReport]
    mean_series: Dict[str, Dict[str, List[Tuple[float, float]]]]
    runs: List[RunScores] = field(default_factory=list)
    grammar: Optional[Grammar] = None
    timings: Dict[str, float] = field(default_factory=dict)

    def summary(self) -> List[dict]:
        rows = []
        by_gen: Dict[str, List[RunScores]] = defaultdict(list)
        for r in self.runs:
            by_gen[r.generator].append(r)
        for gen, rs in by_gen.items():
            rows.append({
                "generator": gen,
                "count": len(rs),
                "gcd": float(np.mean([r.gcd for r in rs])),
                "cosine": float(np.mean([r.cosine for r in rs])),
                "clustering": float(np.mean([r.clustering for r in rs])),
                "n": float(np.mean([r.n for r in rs])),
                "m": float(np.mean([r.m for r in rs])),
            })
        return rows

    def paired(self, a: str, b: str, attr: str) -> List[Tuple[float, float]]:
        """``(a, b)`` score pairs for draws with the same index."""
        left = {r.index: getattr(r, attr) for r in self.runs if r.generator == a}
        right = {r.index: getattr(r, attr) for r in self.runs if r.generator == b}
        return [(left[i], right[i]) for i in sorted(left) if i in right]


def _reports(g: Graph, seed: Optional[int]) -> Dict[str, M.MetricReport]:
    out = {r.name: r for r in M.all_metrics(g, seed=seed)}
    if "network_values" not in out:
        # centrality is defined on connected graphs; use the giant component
        out["network_values"] = M.network_values(largest_connected_component(g))
    return out


def _evaluate(args):
    gen, index, g, orig_gcm, orig_nv, seed = args
    g = g if g.is_compact() else g.compact()[0]
    reps = _reports(g, substream_seed(seed, f"metric-{gen}-{index}"))
    nv = np.array([y for _, y in reps["network_values"].series])
    score = RunScores(gen, index, g.n, g.m,
                      M.gcd_from_matrices(orig_gcm, M.graphlet_correlation_matrix(g)),
                      M.cosine_distance_sorted(orig_nv, nv),
                      reps["clustering"].scalar)
    return score, reps


def _mean_series(reports: Sequence[M.MetricReport]) -> List[Tuple[float, float]]:
    acc: Dict[float, List[float]] = defaultdict(list)
    for r in reports:
        for x, y in r.series:
            acc[x].append(y)
    k = len(reports)
    # a point missing from a draw counts as zero
    return [(x, float(sum(ys) / k)) for x, ys in sorted(acc.items())]


def generate_one(gen: str, grammar: Optional[Grammar], original: Graph, index: int, seed: Optional[int],
                 p: float = 0.5) -> Graph:
    name = f"gen-{gen}-{index}"
    if gen == "rperg":
        return generate_ergm2(grammar, original.n, seed=substream_seed(seed, name))
    if gen == "rperg-ergm1":
        return generate_ergm1(grammar, p, seed=substream_seed(seed, name))
    if gen == "chung-lu":
        return chung_lu(degree_sequence(original), rng=np_rng(seed, name))
    raise ValueError(f"unknown generator {gen!r}")


def run_compare(original: Graph, generators: Sequence[str] = ("rperg", "chung-lu"), count: int = 10,
                seed: Optional[int] = None, jobs: int = 1, learn_cfg: Optional[LearnConfig] = None,
                p: float = 0.5) -> CompareResult:
    original = original if original.is_compact() else original.compact()[0]
    timings = {}
    t0 = time.perf_counter()
    grammar = None
    if any(g.startswith("rperg") for g in generators):
        cfg = learn_cfg or LearnConfig(seed=substream_seed(seed, "learn"))
        grammar = learn([original], cfg)
    timings["learn"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    orig_reports = _reports(original, substream_seed(seed, "metric-original"))
    orig_gcm = M.graphlet_correlation_matrix(original)
    orig_nv = np.array([y for _, y in orig_reports["network_values"].series])
    timings["metrics_original"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    work = []
    for gen in generators:
        for i in range(count):
            g = generate_one(gen, grammar, original, i, seed, p)
            work.append((gen, i, g, orig_gcm, orig_nv, seed))
    timings["generate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_evaluate, work))
    else:
        results = [_evaluate(w) for w in work]
    timings["metrics_generated"] = time.perf_counter() - t0

    per_gen: Dict[str, Dict[str, List[M.MetricReport]]] = defaultdict(lambda: defaultdict(list))
    runs = []
    for (gen, *_), (score, reps) in zip(work, results):
        runs.append(score)
        for name, rep in reps.items():
            per_gen[gen][name].append(rep)
    mean_series = {gen: {name: _mean_series(reps) for name, reps in d.items()} for gen, d in per_gen.items()}
    return CompareResult(orig_reports, mean_series, runs, grammar, timings)
