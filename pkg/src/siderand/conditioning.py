"""Compression of a timing series into a fixed 256-bit seed.

The series is serialized with a fixed-width, version-tagged encoding and
hashed with SHA-256.  The encoding is injective over valid series, so two
different series can never serialize to the same bytes, and the sample order
is part of the input: the sequence order is collected entropy and must
survive into the digest.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptySeries

__all__ = ["Seed256", "SERIES_TAG", "serialize_series", "condition"]

#: Domain tag leading every serialized series; bump for any format revision.
SERIES_TAG = b"SIDERAND-v1"


@dataclass(frozen=True)
class Seed256:
    """A 32-byte conditioned seed.

    The value never appears in reprs or logs; render it only through an
    explicit ``hex()`` call.
    """

    value: bytes

    def __post_init__(self) -> None:
        if not isinstance(self.value, bytes) or len(self.value) != 32:
            raise ValueError("a seed is exactly 32 bytes")

    def __repr__(self) -> str:
        return "Seed256(<32 bytes>)"

    def __bytes__(self) -> bytes:
        return self.value

    def hex(self) -> str:
        """Explicitly render the seed as 64 lowercase hex characters."""
        return self.value.hex()

    @classmethod
    def from_hex(cls, text: str) -> "Seed256":
        return cls(bytes.fromhex(text))


def serialize_series(series: Sequence[int]) -> bytes:
    """Fixed-width encoding of a timing series.

    Layout: ASCII tag ``SIDERAND-v1``, one zero byte, the sample count as an
    8-byte big-endian unsigned integer, then each duration as 8-byte
    big-endian unsigned nanoseconds in collection order.  Total length is
    20 + 8n bytes.
    """
    durations = list(series)
    if not durations:
        raise EmptySeries("cannot serialize an empty series")
    parts = [SERIES_TAG, b"\x00", len(durations).to_bytes(8, "big")]
    for d in durations:
        parts.append(int(d).to_bytes(8, "big"))
    return b"".join(parts)


def condition(series: Sequence[int]) -> Seed256:
    """SHA-256 the serialized series into a 256-bit seed.  Deterministic."""
    return Seed256(hashlib.sha256(serialize_series(series)).digest())
