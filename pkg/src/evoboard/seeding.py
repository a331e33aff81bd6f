"""Deterministic seed derivation.

Every random decision in the pipeline draws from a generator seeded through
`derive_seed`, so one root seed reproduces a whole run and any sub-component
(a single playout, one family's mutation, one coevolution match schedule) can
be re-run in isolation.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, *labels: object) -> int:
    """Hash a root seed and a label path into a 63-bit child seed."""
    key = "/".join(str(part) for part in (root, *labels))
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def derive_rng(root: int, *labels: object) -> random.Random:
    """Stdlib generator seeded from the derived seed."""
    return random.Random(derive_seed(root, *labels))
