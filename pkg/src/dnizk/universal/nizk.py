"""Centralized NIZK backends for "the committed graph has property P".

:class:`IdealNizk` is the ideal functionality: proofs are oracle tokens
registered only after the witness has been checked. It is complete, sound
and witness-independent by construction. A concrete Fiat-Shamir backend
would implement the same three methods.
"""

from __future__ import annotations

import abc
import hashlib
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import WitnessInvalid
from .oracle import RandomOracle, open_verify

NIZK_TAG = b"\x02"


@dataclass(frozen=True)
class GraphProperty:
    """An NP graph property given by a witness checker on an n x n adjacency matrix."""

    name: str
    check: Callable[[int, Sequence[Sequence[int]], object], bool]
    find_witness: Callable[[int, Sequence[Sequence[int]]], object | None]


def _colors_ok(n, adj, witness, c=3) -> bool:
    if witness is None or len(witness) != n or any(not 0 <= x < c for x in witness):
        return False
    if any(adj[i][j] != adj[j][i] for i in range(n) for j in range(n)) or any(adj[i][i] for i in range(n)):
        return False
    return all(witness[i] != witness[j] for i in range(n) for j in range(i + 1, n) if adj[i][j])


def _find_colors(n, adj, c=3):
    col = [-1] * n

    def go(k):
        if k == n:
            return True
        for x in range(c):
            if all(col[j] != x for j in range(k) if adj[k][j]):
                col[k] = x
                if go(k + 1):
                    return True
        col[k] = -1
        return False

    return list(col) if go(0) else None


THREE_COLORABLE = GraphProperty("3-colorable", _colors_ok, _find_colors)


@dataclass(frozen=True)
class MatrixWitness:
    bits: tuple  # n x n adjacency bits
    openings: tuple  # n x n Opening
    property_witness: object


def statement_digest(matrix: Sequence[bytes]) -> bytes:
    return hashlib.sha256(b"".join(matrix)).digest()


class NizkBackend(abc.ABC):
    @abc.abstractmethod
    def prove(self, statement: tuple, witness: MatrixWitness) -> bytes: ...

    @abc.abstractmethod
    def verify(self, statement: tuple, proof) -> bool: ...

    @abc.abstractmethod
    def simulate(self, statement: tuple) -> bytes: ...


class IdealNizk(NizkBackend):
    def __init__(self, oracle: RandomOracle, n: int, prop: GraphProperty = THREE_COLORABLE):
        self.oracle = oracle
        self.n = n
        self.prop = prop
        self.registry: dict[bytes, bytes] = {}
        self.log: list[tuple[str, bytes]] = []

    def in_language(self, statement: tuple, witness: MatrixWitness) -> bool:
        n = self.n
        if len(statement) != n * n or len(witness.bits) != n or len(witness.openings) != n:
            return False
        for i in range(n):
            for j in range(n):
                op = witness.openings[i][j]
                if op.bit != witness.bits[i][j] or not open_verify(self.oracle, statement[i * n + j], op, i, j):
                    return False
        return self.prop.check(n, witness.bits, witness.property_witness)

    def _register(self, statement: tuple) -> bytes:
        d = statement_digest(statement)
        token = self.oracle.query(NIZK_TAG + d)
        self.registry[d] = token
        return token

    def prove(self, statement, witness):
        if not self.in_language(statement, witness):
            raise WitnessInvalid("witness does not place the statement in the language")
        self.log.append(("prove", statement_digest(statement)))
        return self._register(statement)

    def verify(self, statement, proof):
        d = statement_digest(statement)
        return isinstance(proof, bytes) and self.registry.get(d) == proof

    def simulate(self, statement):
        self.log.append(("simulate", statement_digest(statement)))
        return self._register(statement)
