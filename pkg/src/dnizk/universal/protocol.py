"""Universal distributed NIZK for an NP graph property.

The prover commits to the whole adjacency matrix (canonical index = ID - 1),
sends the same matrix to every node, opens row and column ``k`` to node
``k``, and attaches a centralized NIZK that the committed graph has the
property. Nodes check their openings against their true neighborhood, run
the equality test on the matrix with their neighbors, and verify the proof.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..engine import NodeState, Protocol, ProverStrategy, View
from ..errors import MalformedMessage, ProtocolParameterMismatch, WitnessInvalid
from ..graph import Configuration
from .._util import ReplayRandomness
from .equality import (COORDS, CodeParams, agreement, default_t, draw_coordinates, equality_check,
                       equality_round, exact_acceptance)
from .nizk import THREE_COLORABLE, GraphProperty, IdealNizk, MatrixWitness, NizkBackend
from .oracle import COMMIT_TAG, DIGEST_BYTES, RAND_BYTES, Opening, RandomOracle, commit, open_verify


@dataclass(frozen=True)
class UniversalCert:
    matrix: tuple  # n*n digests, row-major
    row: tuple  # openings of (k, j) for every j
    col: tuple  # openings of (j, k) for every j
    proof: bytes


@dataclass(frozen=True)
class EqualityMsg:
    symbols: tuple


@lru_cache(maxsize=64)
def matrix_bytes(matrix: tuple) -> bytes:
    return b"".join(matrix)


def adjacency_bits(config: Configuration) -> tuple:
    """n x n adjacency matrix in canonical (ID - 1) order."""
    n = config.n
    bits = [[0] * n for _ in range(n)]
    for u, v in config.edges():
        i, j = config.ids[u] - 1, config.ids[v] - 1
        bits[i][j] = bits[j][i] = 1
    return tuple(tuple(r) for r in bits)


def commit_matrix(oracle: RandomOracle, bits: Sequence[Sequence[int]], rng) -> tuple[tuple, tuple]:
    n = len(bits)
    matrix, openings = [], []
    for i in range(n):
        row = []
        for j in range(n):
            d, op = commit(oracle, bits[i][j], i, j, rng)
            matrix.append(d)
            row.append(op)
        openings.append(tuple(row))
    return tuple(matrix), tuple(openings)


def certs_for(matrix: tuple, openings: tuple, proof: bytes, n: int) -> list[UniversalCert]:
    """Certificate of the node with canonical index k at position k."""
    return [UniversalCert(matrix, openings[k], tuple(openings[j][k] for j in range(n)), proof) for k in range(n)]


class UniversalProtocol(Protocol):
    name = "universal"
    unit = "bits"
    rounds = 1
    challenge_scope = None

    def __init__(self, n: int, t: int | None = None, oracle: RandomOracle | None = None,
                 backend: NizkBackend | None = None, prop: GraphProperty = THREE_COLORABLE, seed: int = 0):
        self.n = n
        self.t = default_t(n) if t is None else t
        self.oracle = oracle if oracle is not None else RandomOracle(seed)
        self.backend = backend if backend is not None else IdealNizk(self.oracle, n, prop)
        self.prop = prop
        self.code = CodeParams.for_length(n * n * DIGEST_BYTES)
        if not 1 <= self.t <= self.code.N:
            raise ProtocolParameterMismatch(f"t={self.t} outside [1, {self.code.N}]")

    def check_config(self, config):
        if config.n != self.n:
            raise ProtocolParameterMismatch(f"parameters are for n={self.n}, graph has n={config.n}")
        if config.kt0:
            raise ProtocolParameterMismatch("nodes must know neighbor IDs to check their openings")
        if sorted(config.ids) != list(range(1, config.n + 1)):
            raise ProtocolParameterMismatch("canonical ordering needs IDs 1..n")

    def in_language(self, config):
        return self.prop.find_witness(config.n, adjacency_bits(config)) is not None

    def _parse(self, cert) -> UniversalCert:
        n = self.n
        if not isinstance(cert, UniversalCert):
            raise MalformedMessage("not a universal certificate")
        m = cert.matrix
        if not isinstance(m, tuple) or len(m) != n * n or any(not isinstance(d, bytes) or len(d) != DIGEST_BYTES for d in m):
            raise MalformedMessage("bad commitment matrix")
        if not isinstance(cert.row, tuple) or not isinstance(cert.col, tuple) or len(cert.row) != n or len(cert.col) != n:
            raise MalformedMessage("bad openings")
        return cert

    def send(self, state, cert, rand, round_no, inbox):
        cert = self._parse(cert)
        coords = draw_coordinates(rand, self.code, self.t)
        return EqualityMsg(equality_round(matrix_bytes(cert.matrix), self.code, coords))

    def checks(self, state: NodeState, cert, rand, gamma) -> dict:
        """Outcome of each verifier check separately."""
        cert = self._parse(cert)
        n, k = self.n, state.ident - 1
        nbrs = {i - 1 for i in state.neighbor_ids}
        ok_open = True
        for j in range(n):
            want = 1 if j in nbrs else 0
            row, col = cert.row[j], cert.col[j]
            if not (open_verify(self.oracle, cert.matrix[k * n + j], row, k, j) and row.bit == want
                    and open_verify(self.oracle, cert.matrix[j * n + k], col, j, k) and col.bit == want):
                ok_open = False
                break
        if len(gamma) != state.degree or any(not isinstance(m, EqualityMsg) for m in gamma):
            raise MalformedMessage("missing equality messages")
        coords = draw_coordinates(rand, self.code, self.t)
        own = equality_round(matrix_bytes(cert.matrix), self.code, coords)
        return {"openings": ok_open,
                "equality": equality_check(own, [m.symbols for m in gamma]),
                "nizk": self.backend.verify(cert.matrix, cert.proof)}

    def decide(self, state, cert, rand, gamma):
        return all(self.checks(state, cert, rand, gamma).values())

    def cert_size(self, cert):
        cert = self._parse(cert)
        return 8 * (DIGEST_BYTES * len(cert.matrix) + (2 * self.n) * (1 + RAND_BYTES) + len(cert.proof))

    def symbol_bits(self) -> int:
        return math.ceil(math.log2(self.code.p))

    def message_size(self, msg):
        if not isinstance(msg, EqualityMsg):
            raise MalformedMessage("unknown message type")
        return len(msg.symbols) * self.symbol_bits()

    def cert_bound(self):
        return 8 * (DIGEST_BYTES * self.n * self.n + 2 * self.n * (1 + RAND_BYTES) + DIGEST_BYTES)

    def message_bound(self):
        return self.t * self.symbol_bits()

    def describe(self):
        return {"protocol": self.name, "n": self.n, "t": self.t, "property": self.prop.name,
                "code": self.code.to_dict(), "equality_bound": 2.0 ** -self.t}


# -- prover -------------------------------------------------------------------

def universal_prove(config: Configuration, property_witness, protocol: UniversalProtocol, rng,
                    bits: Sequence[Sequence[int]] | None = None) -> list[UniversalCert]:
    """Honest certificates, one per node index; ``bits`` overrides the committed graph."""
    n = config.n
    true_bits = adjacency_bits(config)
    bits = true_bits if bits is None else tuple(tuple(r) for r in bits)
    if not protocol.prop.check(n, true_bits, _canonical_witness(config, property_witness)):
        raise WitnessInvalid("witness does not certify the property on this graph")
    matrix, openings = commit_matrix(protocol.oracle, bits, rng)
    proof = protocol.backend.prove(matrix, MatrixWitness(bits, openings, _canonical_witness(config, property_witness)))
    by_index = certs_for(matrix, openings, proof, n)
    return [by_index[config.ids[u] - 1] for u in range(n)]


def _canonical_witness(config: Configuration, witness):
    """Node-indexed coloring -> canonical-index coloring."""
    if witness is None:
        return None
    out = [0] * config.n
    for u in range(config.n):
        out[config.ids[u] - 1] = witness[u]
    return out


def _node_witness(config: Configuration, protocol: UniversalProtocol, witness):
    if witness is not None:
        return witness
    canon = protocol.prop.find_witness(config.n, adjacency_bits(config))
    if canon is None:
        raise WitnessInvalid("graph does not have the property")
    return [canon[config.ids[u] - 1] for u in range(config.n)]


class HonestUniversal(ProverStrategy):
    honest = True
    name = "honest"

    def __init__(self, witness=None):
        self.witness = witness

    def certify(self, config, protocol, rng):
        return universal_prove(config, _node_witness(config, protocol, self.witness), protocol, rng)


class InconsistentMatrices(ProverStrategy):
    """Valid certificates for two matrices that differ in one re-randomized commitment.

    Nodes with canonical index in ``split`` get the second matrix. Both
    matrices commit to the true graph and carry valid proofs, so only the
    equality test can catch the cheat.
    """

    name = "inconsistent-matrices"

    def __init__(self, split: Sequence[int] = (0,), entry: tuple[int, int] = (0, 1), witness=None):
        self.split = frozenset(split)
        self.entry = entry
        self.witness = witness

    def certify(self, config, protocol, rng):
        n = config.n
        w = _canonical_witness(config, _node_witness(config, protocol, self.witness))
        bits = adjacency_bits(config)
        matrix_a, open_a = commit_matrix(protocol.oracle, bits, rng)
        i, j = self.entry
        d, op = commit(protocol.oracle, bits[i][j], i, j, rng)
        matrix_b = tuple(d if x == i * n + j else m for x, m in enumerate(matrix_a))
        open_b = tuple(tuple(op if (a, b) == (i, j) else open_a[a][b] for b in range(n)) for a in range(n))
        proof_a = protocol.backend.prove(matrix_a, MatrixWitness(bits, open_a, w))
        proof_b = protocol.backend.prove(matrix_b, MatrixWitness(bits, open_b, w))
        certs_a = certs_for(matrix_a, open_a, proof_a, n)
        certs_b = certs_for(matrix_b, open_b, proof_b, n)
        self.matrices = (matrix_bytes(matrix_a), matrix_bytes(matrix_b))
        out = []
        for u in range(n):
            k = config.ids[u] - 1
            out.append(certs_b[k] if k in self.split else certs_a[k])
        return out

    def exact_acceptance(self, protocol: UniversalProtocol):
        """Probability the equality test misses the difference (all other checks pass)."""
        a, b = self.matrices
        return exact_acceptance(agreement(a, b, protocol.code), protocol.code, protocol.t)


class MissingEdge(ProverStrategy):
    """Commits to the graph minus one real edge (still has the property)."""

    name = "missing-edge"

    def __init__(self, edge: tuple[int, int] | None = None, witness=None):
        self.edge = edge
        self.witness = witness

    def certify(self, config, protocol, rng):
        bits = [list(r) for r in adjacency_bits(config)]
        u, v = self.edge if self.edge is not None else config.edges()[0]
        i, j = config.ids[u] - 1, config.ids[v] - 1
        bits[i][j] = bits[j][i] = 0
        self.dropped = (u, v)
        return universal_prove(config, _node_witness(config, protocol, self.witness), protocol, rng, bits)


class ForgedProof(ProverStrategy):
    """Commits to the true graph and attaches a random token in place of a proof."""

    name = "forged-proof"

    def certify(self, config, protocol, rng):
        matrix, openings = commit_matrix(protocol.oracle, adjacency_bits(config), rng)
        by_index = certs_for(matrix, openings, rng.randbytes(DIGEST_BYTES), config.n)
        return [by_index[config.ids[u] - 1] for u in range(config.n)]


class TamperedOpening(HonestUniversal):
    """Honest certificates with one opening's randomness altered at ``victim``."""

    name = "tampered-opening"

    def __init__(self, victim: int = 0, witness=None):
        super().__init__(witness)
        self.victim = victim

    honest = False

    def certify(self, config, protocol, rng):
        certs = super().certify(config, protocol, rng)
        c = certs[self.victim]
        op = c.row[0]
        bad = Opening(op.bit, bytes([op.randomness[0] ^ 1]) + op.randomness[1:])
        certs[self.victim] = UniversalCert(c.matrix, (bad,) + c.row[1:], c.col, c.proof)
        return certs


# -- coalition simulator --------------------------------------------------------

def simulate_universal_views(states: Sequence[NodeState], protocol: UniversalProtocol, rng) -> dict:
    """Views of the coalition ``states`` built from their neighborhoods alone.

    Pairs touching the coalition are committed to their true bit, all other
    pairs to 0; the proof comes from the backend's simulator and neighbors'
    equality messages are computed from the single simulated matrix.
    """
    n = protocol.n
    bits = [[0] * n for _ in range(n)]
    for s in states:
        i = s.ident - 1
        for ident in s.neighbor_ids:
            bits[i][ident - 1] = bits[ident - 1][i] = 1
    matrix, openings = commit_matrix(protocol.oracle, bits, rng)
    proof = protocol.backend.simulate(matrix)
    coords = tuple(rng.sample(range(protocol.code.N), protocol.t))
    own = equality_round(matrix_bytes(matrix), protocol.code, coords)
    views = {}
    for s in states:
        k = s.ident - 1
        cert = UniversalCert(matrix, openings[k], tuple(openings[j][k] for j in range(n)), proof)
        views[s.ident] = View(s, {COORDS: list(coords)}, cert, (EqualityMsg(own),) * s.degree)
    return views


def verify_view(view: View, protocol: UniversalProtocol) -> dict:
    try:
        return protocol.checks(view.state, view.sigma, ReplayRandomness(view.r), view.gamma)
    except MalformedMessage:
        return {"openings": False, "equality": False, "nizk": False}


def leaked_edges(oracle: RandomOracle, config: Configuration, coalition: Sequence[int]) -> list[tuple[int, int]]:
    """Real edges outside the coalition whose bit-1 commitment preimage appears in the query log."""
    members = {config.ids[u] - 1 for u in coalition}
    out = []
    for u, v in config.edges():
        i, j = config.ids[u] - 1, config.ids[v] - 1
        if i in members or j in members:
            continue
        for a, b in ((i, j), (j, i)):
            if oracle.queried(COMMIT_TAG + struct.pack(">IIB", a, b, 1)):
                out.append((u, v))
                break
    return out
