import hashlib
import json
from typing import Iterator

import numpy as np
from sympy.polys.domains import QQ

from kpverify.core.constants import (
    DEFAULT_SEED,
    RATIONAL_POOL_DENOMINATORS,
    RATIONAL_POOL_NUMERATORS,
)


def seeded_rationals(seed: int = DEFAULT_SEED, positive: bool = True) -> Iterator:
    """Endless deterministic stream of small rationals."""
    rng = np.random.default_rng(seed)
    while True:
        p = int(rng.choice(RATIONAL_POOL_NUMERATORS))
        q = int(rng.choice(RATIONAL_POOL_DENOMINATORS))
        if not positive and rng.integers(0, 2):
            p = -p
        yield QQ(p, q)


def distinct_tuple(stream: Iterator, size: int, forbid=None) -> tuple:
    """Draw ``size`` pairwise distinct values, skipping those ``forbid`` rejects."""
    out: list = []
    while len(out) < size:
        v = next(stream)
        if v in out:
            continue
        if forbid is not None and forbid(out, v):
            continue
        out.append(v)
    return tuple(out)


def digest(payload) -> str:
    """Short stable digest of a JSON-able payload, used in check reports."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
