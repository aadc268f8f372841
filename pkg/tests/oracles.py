"""Independent reference implementations used to derive expected test values.

Everything here is written from the primary definitions (FIPS 180-4 and
FIPS 197 pseudo-code, literal counting loops) instead of wrapping the same
libraries the package uses, so every pinned vector is confirmed by two
unrelated code paths.  Slow is fine; these only run inside the test suite.
"""

from __future__ import annotations

import math

# ---------------------------------------------------------------------------
# SHA-256 (FIPS 180-4)
# ---------------------------------------------------------------------------

_SHA_K = [
    0x428A2F98, 0x71374491, 0xB5C0FBCF, 0xE9B5DBA5, 0x3956C25B, 0x59F111F1,
    0x923F82A4, 0xAB1C5ED5, 0xD807AA98, 0x12835B01, 0x243185BE, 0x550C7DC3,
    0x72BE5D74, 0x80DEB1FE, 0x9BDC06A7, 0xC19BF174, 0xE49B69C1, 0xEFBE4786,
    0x0FC19DC6, 0x240CA1CC, 0x2DE92C6F, 0x4A7484AA, 0x5CB0A9DC, 0x76F988DA,
    0x983E5152, 0xA831C66D, 0xB00327C8, 0xBF597FC7, 0xC6E00BF3, 0xD5A79147,
    0x06CA6351, 0x14292967, 0x27B70A85, 0x2E1B2138, 0x4D2C6DFC, 0x53380D13,
    0x650A7354, 0x766A0ABB, 0x81C2C92E, 0x92722C85, 0xA2BFE8A1, 0xA81A664B,
    0xC24B8B70, 0xC76C51A3, 0xD192E819, 0xD6990624, 0xF40E3585, 0x106AA070,
    0x19A4C116, 0x1E376C08, 0x2748774C, 0x34B0BCB5, 0x391C0CB3, 0x4ED8AA4A,
    0x5B9CCA4F, 0x682E6FF3, 0x748F82EE, 0x78A5636F, 0x84C87814, 0x8CC70208,
    0x90BEFFFA, 0xA4506CEB, 0xBEF9A3F7, 0xC67178F2,
]

_SHA_H0 = [
    0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
    0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19,
]


def _rotr(x: int, n: int) -> int:
    return ((x >> n) | (x << (32 - n))) & 0xFFFFFFFF


def sha256(data: bytes) -> bytes:
    """SHA-256 digest computed directly from the FIPS 180-4 description."""
    h = list(_SHA_H0)
    bit_len = len(data) * 8
    data = data + b"\x80" + b"\x00" * ((55 - len(data)) % 64) + bit_len.to_bytes(8, "big")
    assert len(data) % 64 == 0

    for off in range(0, len(data), 64):
        w = [int.from_bytes(data[off + 4 * t : off + 4 * t + 4], "big") for t in range(16)]
        for t in range(16, 64):
            s0 = _rotr(w[t - 15], 7) ^ _rotr(w[t - 15], 18) ^ (w[t - 15] >> 3)
            s1 = _rotr(w[t - 2], 17) ^ _rotr(w[t - 2], 19) ^ (w[t - 2] >> 10)
            w.append((w[t - 16] + s0 + w[t - 7] + s1) & 0xFFFFFFFF)

        a, b, c, d, e, f, g, hh = h
        for t in range(64):
            s1 = _rotr(e, 6) ^ _rotr(e, 11) ^ _rotr(e, 25)
            ch = (e & f) ^ (~e & g)
            t1 = (hh + s1 + ch + _SHA_K[t] + w[t]) & 0xFFFFFFFF
            s0 = _rotr(a, 2) ^ _rotr(a, 13) ^ _rotr(a, 22)
            maj = (a & b) ^ (a & c) ^ (b & c)
            t2 = (s0 + maj) & 0xFFFFFFFF
            hh, g, f, e, d, c, b, a = g, f, e, (d + t1) & 0xFFFFFFFF, c, b, a, (t1 + t2) & 0xFFFFFFFF

        h = [(x + y) & 0xFFFFFFFF for x, y in zip(h, (a, b, c, d, e, f, g, hh))]

    return b"".join(x.to_bytes(4, "big") for x in h)


# ---------------------------------------------------------------------------
# AES-256 block encryption and CTR keystream (FIPS 197)
# ---------------------------------------------------------------------------


def _rotl8(x: int, n: int) -> int:
    return ((x << n) | (x >> (8 - n))) & 0xFF


def _build_sbox() -> list[int]:
    # Multiplicative inverse in GF(2^8) followed by the affine transform,
    # via the classic p/q construction (p walks *3, q walks /3).
    sbox = [0] * 256
    p = q = 1
    while True:
        p = p ^ ((p << 1) & 0xFF) ^ (0x1B if p & 0x80 else 0)
        q ^= (q << 1) & 0xFF
        q ^= (q << 2) & 0xFF
        q ^= (q << 4) & 0xFF
        if q & 0x80:
            q ^= 0x09
        sbox[p] = q ^ _rotl8(q, 1) ^ _rotl8(q, 2) ^ _rotl8(q, 3) ^ _rotl8(q, 4) ^ 0x63
        if p == 1:
            break
    sbox[0] = 0x63
    return sbox


_SBOX = _build_sbox()
assert _SBOX[0x00] == 0x63 and _SBOX[0x01] == 0x7C and _SBOX[0x53] == 0xED


def _xtime(x: int) -> int:
    x <<= 1
    if x & 0x100:
        x ^= 0x11B
    return x & 0xFF


def _gmul(x: int, y: int) -> int:
    out = 0
    while y:
        if y & 1:
            out ^= x
        x = _xtime(x)
        y >>= 1
    return out


def _expand_key_256(key: bytes) -> list[list[int]]:
    assert len(key) == 32
    words = [list(key[4 * i : 4 * i + 4]) for i in range(8)]
    rcon = 1
    for i in range(8, 60):
        t = list(words[i - 1])
        if i % 8 == 0:
            t = t[1:] + t[:1]
            t = [_SBOX[b] for b in t]
            t[0] ^= rcon
            rcon = _xtime(rcon)
        elif i % 8 == 4:
            t = [_SBOX[b] for b in t]
        words.append([a ^ b for a, b in zip(words[i - 8], t)])
    # 15 round keys of 16 bytes each
    return [sum(words[4 * r : 4 * r + 4], []) for r in range(15)]


def aes256_encrypt_block(key: bytes, block: bytes) -> bytes:
    """Encrypt one 16-byte block with AES-256, straight from FIPS 197."""
    assert len(block) == 16
    round_keys = _expand_key_256(key)
    # state[r + 4c] column-major, matching the FIPS input ordering
    state = list(block)
    state = [s ^ k for s, k in zip(state, round_keys[0])]

    for rnd in range(1, 15):
        state = [_SBOX[b] for b in state]
        # ShiftRows: row r rotates left by r
        shifted = [0] * 16
        for c in range(4):
            for r in range(4):
                shifted[r + 4 * c] = state[r + 4 * ((c + r) % 4)]
        state = shifted
        if rnd != 14:
            mixed = [0] * 16
            for c in range(4):
                col = state[4 * c : 4 * c + 4]
                mixed[4 * c + 0] = _gmul(col[0], 2) ^ _gmul(col[1], 3) ^ col[2] ^ col[3]
                mixed[4 * c + 1] = col[0] ^ _gmul(col[1], 2) ^ _gmul(col[2], 3) ^ col[3]
                mixed[4 * c + 2] = col[0] ^ col[1] ^ _gmul(col[2], 2) ^ _gmul(col[3], 3)
                mixed[4 * c + 3] = _gmul(col[0], 3) ^ col[1] ^ col[2] ^ _gmul(col[3], 2)
            state = mixed
        state = [s ^ k for s, k in zip(state, round_keys[rnd])]

    return bytes(state)


def aes256_ctr_keystream(key: bytes, counter: int, nbytes: int) -> bytes:
    """Keystream of AES-256 over big-endian 128-bit counter blocks."""
    out = bytearray()
    while len(out) < nbytes:
        out += aes256_encrypt_block(key, (counter % (1 << 128)).to_bytes(16, "big"))
        counter += 1
    return bytes(out[:nbytes])


# ---------------------------------------------------------------------------
# Naive counting and calibration oracles
# ---------------------------------------------------------------------------


def naive_frequency(durations) -> dict[int, int]:
    """Brute-force frequency count: one full O(n) scan per distinct value."""
    counts: dict[int, int] = {}
    seq = list(durations)
    for v in seq:
        if v not in counts:
            n = 0
            for w in seq:
                if w == v:
                    n += 1
            counts[v] = n
    return dict(sorted(counts.items()))


def brute_force_recommended_samples(mfv_fraction: float, floor_bits: float, safety_margin: float = 2.0) -> int:
    """Smallest n with n * log2(1/mfv) >= floor * margin, by scanning n upward."""
    per_sample = math.log2(1.0 / mfv_fraction)
    n = 1
    while n * per_sample < floor_bits * safety_margin:
        n += 1
    return n
