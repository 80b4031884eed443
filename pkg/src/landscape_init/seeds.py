"""Deterministic seed derivation so every run, group and layer gets an
independent stream that is reproducible from one master seed."""

from __future__ import annotations

import hashlib


def derive_seed(master: int, *parts) -> int:
    """64-bit seed from a master seed and any hashable labels."""
    key = ":".join([str(int(master))] + [str(p) for p in parts])
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "little")
