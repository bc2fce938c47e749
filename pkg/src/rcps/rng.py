"""Reproducible random-stream derivation.

Every stochastic routine in this package takes an explicit
``numpy.random.Generator``.  Independent streams for trials, segments or
workers are derived from a single master seed plus an integer key path,
so results are bit-reproducible and safely parallelizable: two streams
with different key paths never overlap.
"""

from __future__ import annotations

import numpy as np

__all__ = ["derive_rng"]


def derive_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Return a generator deterministically keyed by ``(master_seed, *key)``.

    The same arguments always yield the same stream.  ``master_seed`` and
    all key components must be non-negative integers (the master seed is
    a 64-bit value).
    """
    parts = [int(master_seed), *(int(k) for k in key)]
    if any(p < 0 for p in parts):
        raise ValueError("seed key components must be non-negative integers")
    return np.random.default_rng(parts)
