"""Seedable deterministic random generator for dealer operations.

SHA-256 in counter mode: the same seed produces the same byte stream on
every platform and Python version, which is what makes seeded deals
reproducible bit for bit.  Without a seed, 32 bytes of OS entropy are used.
"""

from __future__ import annotations

import hashlib
import os

_DOMAIN = b"mss.drbg.v1:"


class Drbg:
    """Deterministic random bit generator.

    Not thread-safe: a sampler must own its generator exclusively.
    """

    __slots__ = ("_key", "_counter", "_pool", "_pos")

    def __init__(self, seed: int | str | bytes | None = None):
        if seed is None:
            material = os.urandom(32)
        elif isinstance(seed, bytes):
            material = seed
        elif isinstance(seed, str):
            material = seed.encode("utf-8")
        elif isinstance(seed, int):
            if seed < 0:
                raise ValueError("seed must be nonnegative")
            material = seed.to_bytes(max(1, (seed.bit_length() + 7) // 8), "big")
        else:
            raise TypeError(f"unsupported seed type: {type(seed).__name__}")
        self._key = hashlib.sha256(_DOMAIN + material).digest()
        self._counter = 0
        self._pool = b""
        self._pos = 0

    def randbytes(self, n: int) -> bytes:
        out = bytearray()
        while n > 0:
            if self._pos == len(self._pool):
                block = hashlib.sha256(
                    self._key + self._counter.to_bytes(8, "big")
                ).digest()
                self._counter += 1
                self._pool = block
                self._pos = 0
            take = min(n, len(self._pool) - self._pos)
            out += self._pool[self._pos : self._pos + take]
            self._pos += take
            n -= take
        return bytes(out)

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            raise ValueError("number of bits must be positive")
        nbytes = (k + 7) // 8
        value = int.from_bytes(self.randbytes(nbytes), "big")
        return value >> (8 * nbytes - k)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        k = n.bit_length()
        while True:
            value = self.getrandbits(k)
            if value < n:
                return value

    def bit_vector(self, r: int) -> tuple[int, ...]:
        """Uniform binary vector of length r, most significant bit first."""
        value = self.getrandbits(r)
        return tuple((value >> (r - 1 - i)) & 1 for i in range(r))
