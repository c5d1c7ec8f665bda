"""Derivation of reproducible, independent random streams.

All stochastic code in the package draws from streams keyed by
``(seed, *key)``. The mapping is stable: the same key always yields the
same stream no matter how many other streams exist or in which order they
are created, so parallel and sequential execution produce identical
results.
"""

from __future__ import annotations

import numpy as np


def child_rng(seed: int, *key: int) -> np.random.Generator:
    """Return the generator for the stream identified by ``(seed, *key)``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def child_seed(seed: int, *key: int) -> int:
    """Derive a 64-bit integer seed for the stream identified by ``(seed, *key)``.

    Used to hand a nested procedure (e.g. the bootstrap inside one Monte
    Carlo replicate) its own root seed.
    """
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])
