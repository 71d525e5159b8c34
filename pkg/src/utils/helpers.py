"""General helper functions."""

from __future__ import annotations

import hashlib
import math
import struct

_SEED_MASK = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Hash integer parts into a 64-bit seed.

    The seed is blake2b over the parts packed as little-endian 64-bit words
    (negative parts wrap modulo 2**64), so it depends only on the parts and
    not on call order.
    """
    payload = b"".join(struct.pack("<Q", int(p) & _SEED_MASK) for p in parts)
    digest = hashlib.blake2b(payload, digest_size=8, person=b"fedmode-seed").digest()
    return int.from_bytes(digest, "little")


def floor_fraction(n: int, fraction: float) -> int:
    """floor(n * fraction), robust to binary rounding of decimal fractions."""
    return int(math.floor(n * fraction + 1e-9))


def split_counts(n: int, proxy_fraction: float, train_fraction: float) -> tuple[int, int, int]:
    """Return (proxy, train, test) sizes: floor for proxy and train, remainder to test."""
    n_proxy = floor_fraction(n, proxy_fraction)
    rest = n - n_proxy
    n_train = floor_fraction(rest, train_fraction)
    return n_proxy, n_train, rest - n_train
