"""Deterministic seed derivation.

All randomness in a run flows from a single root seed. Substreams are
derived by hashing the root seed together with a path of labels, e.g.
``derive(seed, "problem", 14, "fold", 3, "program", 0)``. Hashing keeps
substreams independent of iteration order and stable across runs.
"""

import hashlib


def derive(seed: int, *path) -> int:
    """Return a 63-bit seed for the substream named by ``path``."""
    key = f"{seed}|" + "/".join(str(p) for p in path)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
