"""Synchronous execution of one-prover-message distributed proofs.

A run goes through five strictly ordered phases:

1. the prover strategy emits one certificate per node;
2. shared randomness is instantiated from the seed (it does not exist
   before the certificates are fixed);
3. every node computes its outgoing messages from its state, the shared
   randomness and its certificate (plus earlier rounds, in two-round mode);
4. messages are delivered, ordered by each receiver's port order;
5. every node decides from its view ``(state, r, sigma, gamma)``.
"""

from __future__ import annotations

import abc
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import wire
from .errors import (
    MalformedMessage,
    MessageSizeViolation,
    NotEnumerable,
    PositiveInstanceSupplied,
    ProtocolParameterMismatch,
)
from .graph import Configuration
from .rand import RandomStream, SharedRandomness, derive_seed

RUN_SCHEMA = "dnizk.run/1"


@dataclass(frozen=True)
class NodeState:
    """What a node knows before the protocol starts: s(v)."""

    ident: int
    degree: int
    n: int
    neighbor_ids: tuple | None  # None in KT0: only ports are known


@dataclass(frozen=True)
class View:
    state: NodeState
    r: dict
    sigma: Any
    gamma: tuple


class PerPort(tuple):
    """A distinct outgoing message for each port, in the sender's port order."""


def node_states(config: Configuration) -> list[NodeState]:
    states = []
    for u in range(config.n):
        nbr_ids = None if config.kt0 else tuple(config.ids[v] for v in config.port_order[u])
        states.append(NodeState(config.ids[u], config.degree(u), config.n, nbr_ids))
    return states


class Protocol(abc.ABC):
    """Node-side logic of a distributed proof plus its size accounting."""

    name = "protocol"
    rounds = 1
    unit = "field_elements"
    # "shared": one challenge drawn from shared randomness; "per_node": each node
    # draws its own challenge and its verdict depends on nothing else random.
    challenge_scope: str | None = None

    @abc.abstractmethod
    def check_config(self, config: Configuration) -> None:
        """Raise ProtocolParameterMismatch if the parameters do not fit ``config``."""

    @abc.abstractmethod
    def in_language(self, config: Configuration) -> bool:
        ...

    @abc.abstractmethod
    def send(self, state: NodeState, cert, rand: SharedRandomness, round_no: int,
             inbox: Sequence[tuple]):
        """Outgoing message(s) for ``round_no``.

        Returns a single message (broadcast to every port) or a :class:`PerPort`
        tuple with one message per port. ``inbox[k]`` holds the per-port messages of round k.
        """

    @abc.abstractmethod
    def decide(self, state: NodeState, cert, rand: SharedRandomness, gamma: tuple) -> bool:
        ...

    @abc.abstractmethod
    def cert_size(self, cert) -> int:
        ...

    @abc.abstractmethod
    def message_size(self, msg) -> int:
        ...

    def cert_bound(self) -> int | None:
        return None

    def message_bound(self) -> int | None:
        """Bound on the total size sent over one edge direction across all rounds."""
        return None

    def challenge_space(self) -> tuple[str, int, int]:
        """``(label, lo, hi)``: the challenge is uniform in ``[lo, hi)``."""
        raise NotEnumerable(f"{self.name} draws more shared randomness than a single challenge")

    def describe(self) -> dict:
        return {"protocol": self.name}


class ProverStrategy(abc.ABC):
    honest = False
    name = "strategy"

    @abc.abstractmethod
    def certify(self, config: Configuration, protocol: Protocol, rng: RandomStream) -> list:
        """One certificate per node index."""

    def describe(self) -> dict:
        return {"name": self.name, "honest": self.honest}


class Garbage(ProverStrategy):
    """Wraps a strategy and replaces the certificates of ``victims`` with random bytes."""

    name = "garbage"

    def __init__(self, inner: ProverStrategy, victims: Sequence[int] | None = None, size: int = 16):
        self.inner = inner
        self.victims = victims
        self.size = size

    def certify(self, config, protocol, rng):
        certs = list(self.inner.certify(config, protocol, rng))
        victims = range(config.n) if self.victims is None else self.victims
        junk = rng.child(b"garbage")
        for v in victims:
            certs[v] = junk.randbytes(self.size)
        return certs

    def describe(self):
        return {"name": self.name, "honest": False, "inner": self.inner.describe(),
                "victims": None if self.victims is None else list(self.victims)}


@dataclass
class RunResult:
    protocol: dict
    strategy: dict
    seed: int
    prover_seed: int
    verdicts: tuple
    ids: tuple
    rounds: int
    unit: str
    cert_sizes: tuple
    edge_sizes: dict  # (u, v) -> total size sent u -> v
    r: dict
    views: tuple | None = field(default=None, repr=False)

    @property
    def accepted(self) -> bool:
        return all(self.verdicts)

    def to_dict(self, include_views: bool = False) -> dict:
        ids = self.ids
        out = {
            "schema": RUN_SCHEMA,
            "protocol": self.protocol,
            "strategy": self.strategy,
            "seed": self.seed,
            "prover_seed": self.prover_seed,
            "rounds": self.rounds,
            "accepted": self.accepted,
            "verdicts": {str(ids[u]): ("accept" if ok else "reject") for u, ok in enumerate(self.verdicts)},
            "shared_randomness": self.r,
            "sizes": {
                "unit": self.unit,
                "certificate": {str(ids[u]): s for u, s in enumerate(self.cert_sizes)},
                "edge_direction": {f"{ids[u]}->{ids[v]}": s
                                   for (u, v), s in sorted(self.edge_sizes.items())},
            },
        }
        if include_views and self.views is not None:
            out["views"] = {
                str(ids[u]): {
                    "state": wire.encode(view.state).hex(),
                    "sigma": _safe_hex(view.sigma),
                    "gamma": [_safe_hex(m) for m in view.gamma],
                }
                for u, view in enumerate(self.views)
            }
        return out

    def to_json(self, include_views: bool = False) -> str:
        return json.dumps(self.to_dict(include_views), sort_keys=True, indent=2)


def _safe_hex(obj) -> str:
    try:
        return wire.encode(obj).hex()
    except (TypeError, ValueError):
        return repr(obj).encode().hex()


def _run_node(fn, *args):
    try:
        return fn(*args)
    except MalformedMessage:
        return None


def execute(config: Configuration, protocol: Protocol, certs: Sequence, seed: int, *,
            honest: bool = False, overrides: dict | None = None, record_views: bool = True,
            strategy: dict | None = None, prover_seed: int = 0) -> RunResult:
    """Phases 2-5 for a fixed certificate assignment."""
    protocol.check_config(config)
    n = config.n
    if len(certs) != n:
        raise ProtocolParameterMismatch(f"{len(certs)} certificates for {n} nodes")
    states = node_states(config)
    rand = SharedRandomness(seed, overrides)
    ports = config.port_order
    # back_port[u][p] = port index at neighbor ports[u][p] that leads back to u
    back_port = [[ports[v].index(u) for v in ports[u]] for u in range(n)]

    inbox: list[list[tuple]] = [[] for _ in range(n)]
    edge_sizes: dict = {}
    for round_no in range(protocol.rounds):
        incoming = [[None] * config.degree(u) for u in range(n)]
        for u in range(n):
            out = _run_node(protocol.send, states[u], certs[u], rand, round_no, inbox[u])
            deg = config.degree(u)
            if isinstance(out, PerPort):
                per_port = list(out)[:deg] + [None] * (deg - len(out))
            else:
                per_port = [out] * deg
            for p, v in enumerate(ports[u]):
                msg = per_port[p]
                incoming[v][back_port[u][p]] = msg
                size = protocol.message_size(msg) if msg is not None else 0
                edge_sizes[(u, v)] = edge_sizes.get((u, v), 0) + size
        for u in range(n):
            inbox[u].append(tuple(incoming[u]))

    verdicts = []
    views = []
    for u in range(n):
        if protocol.rounds == 1:
            gamma = inbox[u][0]
        else:
            gamma = tuple(zip(*inbox[u])) if config.degree(u) else ()
        ok = _run_node(protocol.decide, states[u], certs[u], rand, gamma)
        verdicts.append(bool(ok))
    r = rand.record()
    if record_views:
        views = [View(states[u], rand.record(node=states[u].ident, everything=False), certs[u],
                      inbox[u][0] if protocol.rounds == 1 else tuple(zip(*inbox[u])))
                 for u in range(n)]

    cert_sizes = []
    for c in certs:
        try:
            cert_sizes.append(protocol.cert_size(c))
        except MalformedMessage:
            cert_sizes.append(-1)

    if honest:
        cb, mb = protocol.cert_bound(), protocol.message_bound()
        if cb is not None and max(cert_sizes) > cb:
            raise MessageSizeViolation(f"certificate of size {max(cert_sizes)} exceeds {cb}")
        if mb is not None and edge_sizes and max(edge_sizes.values()) > mb:
            raise MessageSizeViolation(f"edge message of size {max(edge_sizes.values())} exceeds {mb}")

    return RunResult(
        protocol=protocol.describe(),
        strategy=strategy or {},
        seed=seed,
        prover_seed=prover_seed,
        verdicts=tuple(verdicts),
        ids=config.ids,
        rounds=protocol.rounds,
        unit=protocol.unit,
        cert_sizes=tuple(cert_sizes),
        edge_sizes=edge_sizes,
        r=r,
        views=tuple(views) if record_views else None,
    )


def certify(config: Configuration, protocol: Protocol, strategy: ProverStrategy, prover_seed: int) -> list:
    """Phase 1. Runs before any shared randomness object exists."""
    protocol.check_config(config)
    return list(strategy.certify(config, protocol, RandomStream(prover_seed, b"prover")))


def run(config: Configuration, protocol: Protocol, strategy: ProverStrategy, seed: int, *,
        prover_seed: int | None = None, record_views: bool = True, overrides: dict | None = None) -> RunResult:
    """Full run. ``prover_seed`` defaults to ``seed`` (independent domain)."""
    if prover_seed is None:
        prover_seed = seed
    certs = certify(config, protocol, strategy, prover_seed)
    return execute(config, protocol, certs, seed, honest=strategy.honest, overrides=overrides,
                   record_views=record_views, strategy=strategy.describe(), prover_seed=prover_seed)


def _require_negative(config: Configuration, protocol: Protocol) -> None:
    if protocol.in_language(config):
        raise PositiveInstanceSupplied(f"configuration {config.name or ''} is in the language")


def soundness_trial(config: Configuration, protocol: Protocol, strategy: ProverStrategy, trials: int,
                    seed: int, *, prover_seed: int = 0) -> float:
    """Fraction of trials in which every node accepts; certificates fixed, randomness fresh."""
    _require_negative(config, protocol)
    return acceptance_frequency(config, protocol, strategy, trials, seed, prover_seed=prover_seed)


def acceptance_frequency(config: Configuration, protocol: Protocol, strategy: ProverStrategy, trials: int,
                         seed: int, *, prover_seed: int = 0) -> float:
    certs = certify(config, protocol, strategy, prover_seed)
    hits = 0
    for k in range(trials):
        res = execute(config, protocol, certs, derive_seed(seed, k), honest=strategy.honest,
                      record_views=False)
        hits += res.accepted
    return hits / trials


@dataclass(frozen=True)
class ExactSoundness:
    probability: Fraction
    admissible: int
    accepting: int | None = None  # shared scope: number of accepting challenges
    per_node: dict | None = None  # per-node scope: id -> number of accepting challenges

    def to_dict(self) -> dict:
        return {
            "probability": str(self.probability),
            "probability_float": float(self.probability),
            "admissible": self.admissible,
            "accepting": self.accepting,
            "per_node": None if self.per_node is None else {str(k): v for k, v in self.per_node.items()},
        }


def exact_soundness(config: Configuration, protocol: Protocol, strategy: ProverStrategy, *,
                    prover_seed: int = 0) -> ExactSoundness:
    """Exact acceptance probability by enumerating every admissible challenge."""
    if protocol.challenge_scope not in ("shared", "per_node"):
        raise NotEnumerable(f"{protocol.name} has no enumerable challenge")
    label, lo, hi = protocol.challenge_space()
    certs = certify(config, protocol, strategy, prover_seed)
    total = hi - lo
    if protocol.challenge_scope == "shared":
        hits = 0
        for x in range(lo, hi):
            res = execute(config, protocol, certs, 0, overrides={(label, None): x}, record_views=False)
            hits += res.accepted
        return ExactSoundness(Fraction(hits, total), total, accepting=hits)

    per_node = {}
    prob = Fraction(1)
    base = {(label, ident): lo for ident in config.ids}
    for u, ident in enumerate(config.ids):
        hits = 0
        for x in range(lo, hi):
            res = execute(config, protocol, certs, 0, overrides={**base, (label, ident): x},
                          record_views=False)
            hits += res.verdicts[u]
        per_node[ident] = hits
        prob *= Fraction(hits, total)
    return ExactSoundness(prob, total, per_node=per_node)
