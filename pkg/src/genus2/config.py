"""Run-wide configuration: search budgets, verification bounds, seeding.

Every random choice in the library (factorization splits, point sampling)
is driven by a PRNG seeded from ``Config.prng_seed`` plus a stable context
tag, so identical inputs give identical runs regardless of call order.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass


DEFAULT_SEED = 2014


@dataclass(frozen=True)
class Config:
    discriminant_budget: int = 100_000     # bs_search gives up past this |disc|
    class_poly_disc_bound: int = 1_000_000 # hard cap for class_polynomial
    naive_count_bound: int = 1 << 20       # exhaustive point counts up to here
    bsgs_bound: int = 1 << 50              # group-order search up to here
    certify_points: int = 40               # witness budget for certify_order
    prng_seed: int = DEFAULT_SEED
    cache_dir: str = "./cache"             # holds hilbert.txt
    parallelism: int = 1                   # plumbed through, see notes below
    slow_suite: bool = False

    # The operations this package exposes are pure functions of their
    # arguments plus this config; nothing here mutates after construction,
    # so any of them may be called from concurrent workers.  The current
    # implementation evaluates sequentially; parallelism > 1 is accepted
    # and treated as 1.

    def __post_init__(self):
        if self.prng_seed < 0:
            raise ValueError("prng_seed must be nonnegative")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        """Build a config, letting G2_SEED / G2_CACHE_DIR override defaults."""
        kw = {}
        seed = os.environ.get("G2_SEED")
        if seed is not None:
            kw["prng_seed"] = int(seed)
        cache = os.environ.get("G2_CACHE_DIR")
        if cache is not None:
            kw["cache_dir"] = cache
        kw.update(overrides)
        return cls(**kw)

    def hilbert_cache_path(self) -> str:
        return os.path.join(self.cache_dir, "hilbert.txt")


def subseed(seed: int, *tags) -> int:
    """Derive a child seed from a master seed and a context tag sequence.

    Stable across runs and processes: the tags are serialized to text and
    hashed, so the derived stream does not depend on call order elsewhere.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(str(seed).encode())
    for t in tags:
        h.update(b"/")
        h.update(repr(t).encode())
    return int.from_bytes(h.digest(), "big")
