"""Deterministic sub-seed derivation from one master seed."""

from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_seed(master: int, *keys: int) -> int:
    """64-bit seed for the stream addressed by ``keys`` under ``master``.

    Distinct key tuples give statistically independent streams
    (``numpy.random.SeedSequence`` spawn keys).
    """
    ss = np.random.SeedSequence(entropy=int(master) & SEED_MASK, spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng(master: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *keys))
