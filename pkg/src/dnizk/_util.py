"""Small helpers shared by the polynomial-sharing protocols."""

from __future__ import annotations

import numpy as np

from .errors import MalformedMessage


def eval_coeffs(coeffs, x: int, q: int) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = (acc * x + a) % q
    return acc


def field_vector(xs, length: int, q: int) -> tuple:
    """Validate a received vector of field elements; MalformedMessage otherwise."""
    if not isinstance(xs, tuple) or len(xs) != length:
        raise MalformedMessage("wrong vector length")
    for x in xs:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < q:
            raise MalformedMessage("value outside the field")
    return xs


class ReplayRandomness:
    """Stand-in for SharedRandomness that replays the draws recorded in a view."""

    def __init__(self, r: dict):
        self._r = r

    def uniform(self, label, lo, hi, node=None):
        key = label if node is None else f"{label}@{node}"
        return self._r[key]

    def sample(self, label, population, k, node=None):
        key = label if node is None else f"{label}@{node}"
        return tuple(self._r[key])


def np_horner(coeffs: np.ndarray, x, q: int) -> np.ndarray:
    """Evaluate row-wise polynomials ``coeffs`` (S, k) at ``x`` (scalar or (S,))."""
    acc = np.zeros(coeffs.shape[0], dtype=np.int64)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        acc = (acc * x + coeffs[:, k]) % q
    return acc


def np_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros((a.shape[0], a.shape[1] + b.shape[1] - 1), dtype=np.int64)
    for i in range(a.shape[1]):
        out[:, i:i + b.shape[1]] = (out[:, i:i + b.shape[1]] + a[:, i:i + 1] * b) % q
    return out


def chunk_projections(groups, width: int) -> list[list[str]]:
    """Split each column group into consecutive windows of at most ``width`` columns."""
    out = []
    for g in groups:
        if len(g) <= width:
            out.append(list(g))
            continue
        for k in range(0, len(g) - width + 1):
            out.append(list(g[k:k + width]))
    return out
