"""Seed derivation for reproducible, parallel-safe Monte Carlo.

Every sampler in this package takes a ``stream`` argument: a
``numpy.random.Generator``.  Experiments derive one independent stream per
(master seed, trial) pair, so trials can run in any order, on any number
of workers, and still produce identical results record-by-record.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream_from", "spawn_seed"]


def stream_from(*keys: int) -> np.random.Generator:
    """A fresh PCG64 generator keyed by a tuple of nonnegative integers.

    ``stream_from(seed)``, ``stream_from(seed, trial)`` and
    ``stream_from(seed, cell, trial)`` give mutually independent streams.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(keys)))


def spawn_seed(*keys: int) -> int:
    """A 64-bit integer seed derived from the key tuple (for seed fields
    of value types, e.g. hidden-graph masters)."""
    ss = np.random.SeedSequence(keys)
    return int(ss.generate_state(2, np.uint64)[0])
