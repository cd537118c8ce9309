"""Named random substreams derived from one user seed."""
from __future__ import annotations

import hashlib
import random
from typing import Optional

import numpy as np


def substream_seed(seed: Optional[int], name: str) -> int:
    """64-bit seed for stream ``name``; the same inputs always give the same seed."""
    h = hashlib.sha256(f"{seed if seed is not None else 0}:{name}".encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "little")


def py_rng(seed: Optional[int], name: str) -> random.Random:
    return random.Random(substream_seed(seed, name))


def np_rng(seed: Optional[int], name: str) -> np.random.Generator:
    return np.random.default_rng(substream_seed(seed, name))
