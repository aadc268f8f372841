"""Deterministic stream expansion of a 256-bit seed.

AES-256 in counter mode, keyed by the seed, encrypting successive 128-bit
big-endian counter blocks (the initial counter block is zero).  After every
64 KiB of emitted output the next 32 keystream bytes become the new key and
are never emitted, so a captured state cannot reconstruct past output
(fast key erasure).  The block counter increases monotonically across the
whole stream and is never reused, rekeys included.
"""

from __future__ import annotations

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from .conditioning import Seed256

__all__ = ["StreamState", "new_stream", "REKEY_INTERVAL_BYTES"]

#: Output bytes emitted under one key before it is erased and replaced.
REKEY_INTERVAL_BYTES = 64 * 1024

_BLOCK = 16


def _keystream(key: bytes, counter: int, nblocks: int) -> bytes:
    """AES-256-CTR keystream for ``nblocks`` blocks starting at ``counter``."""
    iv = counter.to_bytes(_BLOCK, "big")
    encryptor = Cipher(algorithms.AES(key), modes.CTR(iv)).encryptor()
    return encryptor.update(b"\x00" * (_BLOCK * nblocks))


class StreamState:
    """An exclusively owned deterministic random stream.

    At most one operation may be in flight per state, and a state must not
    be cloned after use: a copied state would replay (key, counter) pairs.
    Create one stream per thread from independent seeds instead.
    """

    def __init__(self, seed: Seed256) -> None:
        self.current_key = bytes(seed)
        self.counter = 0
        self.bytes_emitted = 0
        self._leftover = b""

    def fill(self, n: int) -> bytes:
        """Produce the next ``n`` bytes of the stream.

        Output depends only on the seed and the total bytes requested so
        far; any partition of N bytes into successive calls yields the same
        N bytes.  ``fill(0)`` returns empty output and leaves the state
        untouched.
        """
        if n < 0:
            raise ValueError(f"byte count must be >= 0, got {n}")
        out = bytearray()
        remaining = n
        while remaining:
            room = REKEY_INTERVAL_BYTES - self.bytes_emitted % REKEY_INTERVAL_BYTES
            take = min(remaining, room)
            out += self._take_keystream(take)
            self.bytes_emitted += take
            remaining -= take
            if self.bytes_emitted % REKEY_INTERVAL_BYTES == 0:
                self._rekey()
        return bytes(out)

    def reseed(self, seed: Seed256) -> None:
        """Restart the stream from a new seed, overwriting all key material."""
        self.current_key = bytes(seed)
        self.counter = 0
        self.bytes_emitted = 0
        self._leftover = b""

    def _take_keystream(self, n: int) -> bytes:
        need = n - len(self._leftover)
        if need > 0:
            nblocks = -(-need // _BLOCK)
            self._leftover += _keystream(self.current_key, self.counter, nblocks)
            self.counter += nblocks
        chunk = self._leftover[:n]
        self._leftover = self._leftover[n:]
        return chunk

    def _rekey(self) -> None:
        # Rekey points are block-aligned: each key epoch emits exactly
        # 64 KiB and consumes whole blocks, so no keystream can be pending.
        assert not self._leftover
        self.current_key = _keystream(self.current_key, self.counter, 2)
        self.counter += 2


def new_stream(seed: Seed256) -> StreamState:
    """Start a deterministic stream: key = seed, counter = 0."""
    return StreamState(seed)
