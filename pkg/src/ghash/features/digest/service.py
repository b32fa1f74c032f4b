from __future__ import annotations

import hashlib
from collections.abc import Callable

DIGEST_SIZE = 16

# 16 raw octets; bytes compare lexicographically, which is the ordering the coder sorts by.
Digest128 = bytes
DigestFn = Callable[[bytes], Digest128]


def md5(message: bytes) -> Digest128:
    """RFC 1321 digest. Used as a deterministic fingerprint, not for security."""
    return hashlib.md5(message, usedforsecurity=False).digest()


DIGESTS: dict[str, DigestFn] = {
    "md5": md5,
}


def get_digest(name: str = "md5") -> DigestFn:
    key = (name or "").strip().lower()
    if key not in DIGESTS:
        raise ValueError(f"Unsupported digest: {name!r}. Allowed={sorted(DIGESTS)}")
    return DIGESTS[key]


def to_hex(d: Digest128) -> str:
    return d.hex()
