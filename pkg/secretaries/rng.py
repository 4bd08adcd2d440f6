"""Seed handling.

Every random stream in the project is a ``numpy`` generator built from a
``SeedSequence`` whose entropy is the caller's 64-bit seed followed by any
salt integers (user index, trial batch, probe number ...). Streams with
different salts are independent and each is reproducible on its own.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _entropy(seed: int, salt: tuple) -> list:
    return [int(seed) & _MASK64, *(int(part) & _MASK64 for part in salt)]


def make_rng(seed: int, *salt: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(_entropy(seed, salt)))


def derive_seed(seed: int, *salt: int) -> int:
    """Return a 64-bit child seed for ``(seed, *salt)``."""
    state = np.random.SeedSequence(_entropy(seed, salt)).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])
