"""Hierarchical seeded random streams.

A master seed plus an integer path (e.g. (trial, block)) maps to an
independent ``numpy.random.Generator``. The mapping depends only on the
path, never on execution order or worker count, so parallel harnesses
that assign one substream per work unit are exactly reproducible.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream"]


def substream(master_seed: int, *path: int) -> np.random.Generator:
    """Derive an independent generator for ``path`` under ``master_seed``.

    Identical (master_seed, path) pairs always yield generators producing
    bit-identical output.
    """
    if master_seed < 0:
        raise ValueError("master_seed must be a non-negative integer")
    ss = np.random.SeedSequence([int(master_seed), *[int(p) for p in path]])
    return np.random.Generator(np.random.PCG64(ss))
