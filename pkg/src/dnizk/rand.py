"""Counter-mode SHA-256 random streams.

Every stream is a pure function of ``(seed, domain)`` so runs replay
byte-for-byte. :class:`SharedRandomness` hands out draws addressed by a
label: any node asking for the same label gets the same value regardless
of the order in which nodes are evaluated.
"""

from __future__ import annotations

import hashlib
import struct
from typing import Hashable, MutableSequence, Sequence

_U64 = struct.Struct(">4Q")
_MASK64 = (1 << 64) - 1


def _label_bytes(label) -> bytes:
    if isinstance(label, bytes):
        return label
    return repr(label).encode()


class RandomStream:
    """Deterministic uniform integers from SHA-256(seed || domain || counter)."""

    def __init__(self, seed: int, domain=b""):
        self.seed = seed & _MASK64
        self._prefix = struct.pack(">Q", self.seed) + _label_bytes(domain) + b"\x00"
        self._counter = 0
        self._buf: list[int] = []

    def _next_u64(self) -> int:
        if not self._buf:
            block = hashlib.sha256(self._prefix + struct.pack(">Q", self._counter)).digest()
            self._counter += 1
            self._buf = list(reversed(_U64.unpack(block)))
        return self._buf.pop()

    def randrange(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (exact, no modulo bias)."""
        if n <= 0:
            raise ValueError("empty range")
        if n == 1:
            return 0
        if n > 1 << 64:
            words = (n.bit_length() + 63) // 64
            limit = (1 << (64 * words)) - ((1 << (64 * words)) % n)
            while True:
                x = 0
                for _ in range(words):
                    x = (x << 64) | self._next_u64()
                if x < limit:
                    return x % n
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self._next_u64()
            if x < limit:
                return x % n

    randbelow = randrange

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randrange(hi - lo + 1)

    def shuffle(self, xs: MutableSequence) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.randrange(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def permutation(self, n: int) -> list[int]:
        xs = list(range(n))
        self.shuffle(xs)
        return xs

    def sample(self, population: Sequence, k: int) -> list:
        """``k`` distinct elements, uniformly without replacement, in draw order."""
        pool = list(population)
        if k > len(pool):
            raise ValueError("sample larger than population")
        out = []
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
            out.append(pool[i])
        return out

    def choice(self, seq: Sequence):
        return seq[self.randrange(len(seq))]

    def randbytes(self, n: int) -> bytes:
        out = bytearray()
        while len(out) < n:
            out += self._next_u64().to_bytes(8, "big")
        return bytes(out[:n])

    def random(self) -> float:
        return (self._next_u64() >> 11) * (1.0 / (1 << 53))

    def child(self, domain) -> "RandomStream":
        """Independent stream derived from this one's seed."""
        return RandomStream(self.seed, self._prefix[8:-1] + b"/" + _label_bytes(domain))


def derive_seed(seed: int, label) -> int:
    digest = hashlib.sha256(struct.pack(">Q", seed & _MASK64) + b"derive\x00" + _label_bytes(label)).digest()
    return int.from_bytes(digest[:8], "big")


class SharedRandomness:
    """Label-addressed shared randomness instantiated from a 64-bit seed.

    ``uniform(label, lo, hi)`` always returns the same value for the same
    label. Private per-node draws pass ``node=``; they come from a separate
    domain so they never coincide with shared draws.
    ``overrides`` pins chosen draws, which is how exact enumeration of a
    challenge space is done.
    """

    def __init__(self, seed: int, overrides: dict | None = None):
        self.seed = seed & _MASK64
        self._overrides = dict(overrides or {})
        self._cache: dict = {}
        self.used: dict = {}

    def _key(self, label: Hashable, node) -> tuple:
        return (label, node)

    def uniform(self, label: Hashable, lo: int, hi: int, node=None) -> int:
        """Uniform integer in ``[lo, hi)`` addressed by ``label`` (and ``node``)."""
        key = self._key(label, node)
        if key in self._cache:
            return self._cache[key]
        if key in self._overrides:
            value = self._overrides[key]
            if not lo <= value < hi:
                raise ValueError(f"override {value} for {key} outside [{lo}, {hi})")
        else:
            domain = (b"private/" if node is not None else b"shared/") + _label_bytes(key)
            value = lo + RandomStream(self.seed, domain).randrange(hi - lo)
        self._cache[key] = value
        self.used[key] = value
        return value

    def sample(self, label: Hashable, population: int, k: int, node=None) -> tuple:
        """``k`` distinct indices from ``range(population)``."""
        key = self._key(label, node)
        if key in self._cache:
            return self._cache[key]
        if key in self._overrides:
            value = tuple(self._overrides[key])
        else:
            domain = (b"private/" if node is not None else b"shared/") + _label_bytes(key)
            value = tuple(RandomStream(self.seed, domain).sample(range(population), k))
        self._cache[key] = value
        self.used[key] = value
        return value

    def record(self, node=None, everything: bool = True) -> dict:
        """Draws consumed so far, keyed by ``"label"`` or ``"label@node"``.

        With ``everything=False`` only shared draws and those private to
        ``node`` are included (what that node actually observed).
        """
        out = {}
        for (label, owner), v in sorted(self.used.items(), key=lambda kv: repr(kv[0])):
            if not everything and owner is not None and owner != node:
                continue
            name = str(label) if owner is None else f"{label}@{owner}"
            out[name] = list(v) if isinstance(v, tuple) else v
        return out
