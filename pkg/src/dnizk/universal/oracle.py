"""Table-backed random oracle and the hash-based bit commitment built on it."""

from __future__ import annotations

import hashlib
import struct
import threading
from dataclasses import dataclass

COMMIT_TAG = b"\x01"
RAND_BYTES = 16
DIGEST_BYTES = 32


class OracleCollision(RuntimeError):
    """Two distinct queries received the same answer (binding would be lost)."""


class RandomOracle:
    """Memoized random function from byte strings to 256-bit values.

    Fresh answers come from a keyed SHA-256 stream so a run replays exactly
    from its seed, independent of query order. Every query is appended to
    ``log``. In programmable mode :meth:`program` may fix an answer before
    the point is queried.
    """

    def __init__(self, seed: int = 0, programmable: bool = False):
        self._key = b"oracle\x00" + struct.pack(">Q", seed & ((1 << 64) - 1))
        self.programmable = programmable
        self.table: dict[bytes, bytes] = {}
        self._inverse: dict[bytes, bytes] = {}
        self.log: list[bytes] = []
        self._lock = threading.Lock()

    def _store(self, x: bytes, y: bytes) -> None:
        prev = self._inverse.get(y)
        if prev is not None and prev != x:
            raise OracleCollision(f"answer collision between {prev.hex()} and {x.hex()}")
        self.table[x] = y
        self._inverse[y] = x

    def query(self, x: bytes) -> bytes:
        x = bytes(x)
        with self._lock:
            self.log.append(x)
            y = self.table.get(x)
            if y is None:
                y = hashlib.sha256(self._key + x).digest()
                self._store(x, y)
            return y

    def program(self, x: bytes, y: bytes) -> None:
        if not self.programmable:
            raise PermissionError("oracle is not programmable")
        if len(y) != DIGEST_BYTES:
            raise ValueError("programmed answers are 32 bytes")
        with self._lock:
            if x in self.table and self.table[x] != y:
                raise ValueError("point already answered")
            self._store(bytes(x), bytes(y))

    def queried(self, prefix: bytes) -> list[bytes]:
        """Logged queries starting with ``prefix``."""
        with self._lock:
            return [x for x in self.log if x.startswith(prefix)]


@dataclass(frozen=True)
class Opening:
    bit: int
    randomness: bytes


def commit_preimage(bit: int, i: int, j: int, randomness: bytes) -> bytes:
    """tag (1 byte) | i (4 bytes BE) | j (4 bytes BE) | bit (1 byte) | randomness (16 bytes)."""
    return COMMIT_TAG + struct.pack(">IIB", i, j, bit) + randomness


def commit(oracle: RandomOracle, bit: int, i: int, j: int, rng) -> tuple[bytes, Opening]:
    if bit not in (0, 1):
        raise ValueError("commitments are to single bits")
    randomness = rng.randbytes(RAND_BYTES)
    return oracle.query(commit_preimage(bit, i, j, randomness)), Opening(bit, randomness)


def open_verify(oracle: RandomOracle, digest: bytes, opening, i: int, j: int) -> bool:
    if not isinstance(opening, Opening) or opening.bit not in (0, 1):
        return False
    if not isinstance(opening.randomness, bytes) or len(opening.randomness) != RAND_BYTES:
        return False
    return oracle.query(commit_preimage(opening.bit, i, j, opening.randomness)) == digest
