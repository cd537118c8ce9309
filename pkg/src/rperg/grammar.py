"""Probabilistic edge replacement grammar with a single non-terminal.

Rules are keyed by the canonical key of their right-hand side. Counts are
accumulated during learning and turned into maximum-likelihood
probabilities by :meth:`Grammar.estimate_probabilities`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .canon import CanonicalForm, canonical_form
from .errors import GrammarError, OutOfVocabularyError
from .graph import Graph

FORMAT_VERSION = 1


@dataclass
class Rule:
    """Production ``A -> rhs``; ``rhs`` uses canonical labels, externals are 0 and 1."""

    key: bytes
    rhs: Graph
    external: Tuple[int, int]
    count: int = 0
    prob: float = 0.0
    fingerprint_only: bool = False

    @property
    def gain(self) -> int:
        """Vertices added by one application."""
        return self.rhs.n - 2

    def describe(self) -> str:
        g = self.rhs
        if g.n == 3 and g.m == 3:
            return "triangle"
        # a star with its externals on two leaves
        centre = [v for v in g.vertices() if g.degree(v) == g.n - 1]
        if g.m == g.n - 1 and centre and g.n >= 3:
            return f"star({g.n - 1})"
        return f"triconn(n={g.n},m={g.m})"

    @classmethod
    def from_form(cls, form: CanonicalForm, count: int = 0) -> "Rule":
        return cls(form.key, form.graph, (0, 1), count, 0.0, form.fingerprint_only)


class Grammar:
    """Map from canonical key to :class:`Rule`."""

    def __init__(self, rules: Optional[Iterable[Rule]] = None):
        self.rules: Dict[bytes, Rule] = {}
        for r in rules or ():
            self.rules[r.key] = r

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, key: bytes) -> bool:
        return key in self.rules

    def __getitem__(self, key: bytes) -> Rule:
        try:
            return self.rules[key]
        except KeyError:
            raise OutOfVocabularyError(f"unknown rule key {key.hex()}") from None

    def __iter__(self):
        return iter(self.ordered())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar) or self.rules.keys() != other.rules.keys():
            return False
        for k, r in self.rules.items():
            o = other.rules[k]
            if (r.rhs != o.rhs or set(r.external) != set(o.external) or r.count != o.count
                    or r.prob != o.prob or r.fingerprint_only != o.fingerprint_only):
                return False
        return True

    def ordered(self) -> List[Rule]:
        """Rules by descending count, then key, for stable output."""
        return sorted(self.rules.values(), key=lambda r: (-r.count, r.key))

    def counts(self) -> Dict[bytes, int]:
        return {k: r.count for k, r in self.rules.items()}

    # -- accumulation ------------------------------------------------------
    def add_count(self, rhs: Graph, external: Tuple[int, int], times: int = 1) -> bytes:
        """Count one occurrence of ``rhs`` with the given external pair."""
        return self.add_form(canonical_form(rhs, external), times)

    def add_form(self, form: CanonicalForm, times: int = 1) -> bytes:
        r = self.rules.get(form.key)
        if r is None:
            r = self.rules[form.key] = Rule.from_form(form)
        r.count += times
        return form.key

    def merge(self, other: "Grammar") -> "Grammar":
        """Add the counts of ``other`` in place."""
        for k, r in other.rules.items():
            mine = self.rules.get(k)
            if mine is None:
                self.rules[k] = Rule(k, r.rhs, r.external, r.count, 0.0, r.fingerprint_only)
            else:
                mine.count += r.count
        return self

    # -- estimation --------------------------------------------------------
    def estimate_probabilities(self) -> "Grammar":
        """Maximum-likelihood probabilities ``count / total``."""
        total = sum(r.count for r in self.rules.values())
        if not self.rules or total <= 0:
            raise GrammarError("cannot estimate probabilities of an empty grammar")
        for r in self.rules.values():
            if r.count < 1:
                raise GrammarError(f"rule {r.key.hex()} has count {r.count}")
            r.prob = r.count / total
        return self

    def graph_probability(self, counts: Mapping[bytes, int]) -> float:
        """Log-probability of a derivation using each rule ``counts[key]`` times."""
        logp = 0.0
        for key, c in counts.items():
            r = self[key]
            if c == 0:
                continue
            if r.prob <= 0.0:
                return -math.inf
            logp += c * math.log(r.prob)
        return logp

    def max_gain(self) -> int:
        return max((r.gain for r in self.rules.values()), default=0)

    # -- persistence -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "rules": [
                {
                    "key": r.key.hex(),
                    "n": r.rhs.n,
                    "edges": [list(e) for e in r.rhs.edges()],
                    "external": list(r.external),
                    "count": r.count,
                    "prob": r.prob,
                    "fingerprint_only": r.fingerprint_only,
                }
                for r in self.ordered()
            ],
        }

    def serialize(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=1) + "\n").encode("utf-8")

    @classmethod
    def deserialize(cls, data) -> "Grammar":
        if isinstance(data, (bytes, bytearray)):
            data = data.decode("utf-8")
        if not data or not data.strip():
            raise GrammarError("empty grammar document")
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GrammarError(f"malformed grammar document: {exc}") from None
        if not isinstance(doc, dict) or "version" not in doc or "rules" not in doc:
            raise GrammarError("grammar document needs 'version' and 'rules'")
        if doc["version"] != FORMAT_VERSION:
            raise GrammarError(f"unsupported grammar version {doc['version']!r}")
        rules = []
        try:
            for item in doc["rules"]:
                n = int(item["n"])
                rhs = Graph.from_edges((tuple(e) for e in item["edges"]), range(n))
                a, b = item["external"]
                if a == b or a not in rhs or b not in rhs:
                    raise GrammarError(f"bad external pair {item['external']!r}")
                rules.append(Rule(bytes.fromhex(item["key"]), rhs, (int(a), int(b)), int(item["count"]),
                                  float(item["prob"]), bool(item.get("fingerprint_only", False))))
        except (KeyError, TypeError, ValueError) as exc:
            raise GrammarError(f"malformed rule entry: {exc!r}") from None
        return cls(rules)

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.serialize())

    @classmethod
    def load(cls, path) -> "Grammar":
        with open(path, "rb") as fh:
            return cls.deserialize(fh.read())
