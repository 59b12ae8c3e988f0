"""Deterministic sub-seed derivation.

Every experiment owns a single root seed. Anything that needs randomness
(per-run streams, observation noise, feature banks) derives its own seed
from the root plus a path of labels, so runs can execute in parallel and
still reproduce bit-identically in any order.

The rule: each path element is folded into a ``numpy.random.SeedSequence``
entropy list; integers go in as-is, strings via a blake2s digest (stable
across platforms and Python processes, unlike ``hash()``).
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _entropy(token: int | str) -> int:
    if isinstance(token, (int, np.integer)):
        return int(token) & _MASK64
    digest = hashlib.blake2s(str(token).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_seed(root: int, *path: int | str) -> int:
    """Map (root, *path) to a stable 64-bit seed."""
    ss = np.random.SeedSequence([_entropy(root)] + [_entropy(p) for p in path])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(root: int, *path: int | str) -> np.random.Generator:
    """Generator seeded by ``derive_seed(root, *path)``."""
    return np.random.default_rng(derive_seed(root, *path))
