"""Seedable, splittable random streams.

Every random quantity in the package is drawn from a numpy ``Generator``
built here, so a (master seed, trial index) pair pins down a trial exactly
and distinct trials never share a stream.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return the generator for ``seed`` split along ``key``.

    ``stream(s)`` and ``stream(s, t)`` are independent for every ``t``; the
    split is the ``SeedSequence`` spawn-key mechanism, so no two keys overlap.
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def as_generator(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(int(seed))
