"""Randomized equality testing between neighbors over a Reed-Solomon code.

A message of L bytes is read as K = ceil(L/2) big-endian 16-bit symbols,
the coefficients of a polynomial over F_p with p >= max(2K, 65537), and
encoded by evaluating at 0..2K-1 (rate 1/2, distance K+1). Neighbors compare
the symbols at t coordinates chosen by shared randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import CodeParameterMismatch
from ..field import find_prime

SYMBOL_BITS = 16
COORDS = "eq"


@dataclass(frozen=True)
class CodeParams:
    length: int  # message length in bytes
    K: int
    p: int

    @classmethod
    def for_length(cls, length: int) -> "CodeParams":
        if length < 1:
            raise CodeParameterMismatch("empty message")
        K = math.ceil(length / 2)
        lo = max(2 * K, 1 << SYMBOL_BITS)
        return cls(length, K, find_prime(lo + 1, 2 * lo))

    @property
    def N(self) -> int:
        return 2 * self.K

    def to_dict(self) -> dict:
        return {"message_bytes": self.length, "K": self.K, "N": self.N, "p": self.p}


def symbols(message: bytes, params: CodeParams) -> np.ndarray:
    if len(message) != params.length:
        raise CodeParameterMismatch(f"message of {len(message)} bytes, code expects {params.length}")
    padded = message + b"\x00" * (2 * params.K - len(message))
    return np.frombuffer(padded, dtype=">u2").astype(np.int64)


@lru_cache(maxsize=256)
def _encode_cached(message: bytes, params: CodeParams) -> tuple:
    coeffs = symbols(message, params)
    xs = np.arange(params.N, dtype=np.int64)
    acc = np.zeros(params.N, dtype=np.int64)
    for a in coeffs[::-1]:
        acc = (acc * xs + a) % params.p
    return tuple(int(v) for v in acc)


def equality_encode(message: bytes, params: CodeParams) -> tuple:
    """Full codeword (length 2K)."""
    return _encode_cached(bytes(message), params)


def draw_coordinates(rand, params: CodeParams, t: int) -> tuple:
    if not 1 <= t <= params.N:
        raise CodeParameterMismatch(f"t={t} outside [1, {params.N}]")
    return tuple(rand.sample(COORDS, params.N, t))


def equality_round(message: bytes, params: CodeParams, coords: tuple) -> tuple:
    """Symbols a node sends to every neighbor."""
    word = equality_encode(message, params)
    return tuple(word[i] for i in coords)


def equality_check(own: tuple, received) -> bool:
    return all(m == own for m in received)


def default_t(n: int) -> int:
    return max(1, math.ceil(math.log2(max(n, 2))))


def agreement(a: bytes, b: bytes, params: CodeParams) -> int:
    wa, wb = equality_encode(a, params), equality_encode(b, params)
    return sum(x == y for x, y in zip(wa, wb))


def exact_acceptance(agree: int, params: CodeParams, t: int) -> Fraction:
    """Probability that t distinct uniform coordinates all fall in the agreement set."""
    return Fraction(math.comb(agree, t), math.comb(params.N, t))


def worst_case_pair(params: CodeParams) -> tuple[bytes, bytes]:
    """Two messages whose codewords agree on exactly K-1 coordinates (minimum distance).

    The second message is the first plus ``c * prod_{k=1}^{K-1} (x - k)``; the
    scale ``c`` is chosen so every coefficient stays a 16-bit symbol.
    """
    p, K = params.p, params.K
    prod = [1]
    for k in range(1, K):
        nxt = [0] * (len(prod) + 1)
        for d, a in enumerate(prod):
            nxt[d + 1] = (nxt[d + 1] + a) % p
            nxt[d] = (nxt[d] - k * a) % p
        prod = nxt
    odd = params.length % 2
    for c in range(1, p):
        coeffs = [(c * a) % p for a in prod]
        # an odd length pads the last symbol's low byte with zero
        if max(coeffs) < 1 << SYMBOL_BITS and not (odd and coeffs[-1] & 0xFF):
            break
    raw = b"".join(v.to_bytes(2, "big") for v in coeffs)
    return bytes(params.length), raw[: params.length]
