"""Seeded random streams.

Every randomized routine takes a ``seed`` and builds a numpy ``Generator``
(PCG64) from it.  Batches of independent trials get one child stream per
trial through :func:`trial_rng`: trial ``i`` of a batch seeded with ``s``
uses ``SeedSequence(s, spawn_key=(i,))``, which is exactly the ``i``-th
child of ``SeedSequence(s).spawn(...)``.  Any single trial can therefore be
replayed without running the ones before it.
"""
from __future__ import annotations

import os
import secrets

import numpy as np

#: Environment variable consulted for a default seed.
SEED_ENV = "BOOLEANITY_SEED"


def fresh_seed() -> int:
    return secrets.randbits(63)


def default_seed() -> int:
    """Seed from ``$BOOLEANITY_SEED`` if set, else a fresh random one."""
    value = os.environ.get(SEED_ENV)
    if value:
        return int(value)
    return fresh_seed()


def make_rng(seed) -> np.random.Generator:
    """Generator from an int, a ``SeedSequence`` or an existing ``Generator``."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_seed(seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(index,))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(trial_seed(seed, index)))


def derive_seed(seed: int, index: int) -> int:
    """A 63-bit integer seed for trial ``index``, for APIs that want plain ints."""
    return int(trial_seed(seed, index).generate_state(1, np.uint64)[0] >> np.uint64(1))
