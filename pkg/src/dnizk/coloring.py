"""Zero-knowledge certification of c-colorability by polynomial sharing.

Each node ``u`` holds a coloring polynomial ``C_u`` (1 at its color, 0 at the
other colors of ``[c]``, a random value ``r_u`` at ``c``). The product sum
``P_u = sum_{v in N(u)} C_u C_v`` vanishes on ``[c]`` iff ``u`` is properly
colored. ``P_u`` is never revealed: the prover splits it into a local share
``P0_u`` plus one random helper polynomial ``H_v`` per neighbor, and the
neighborhood evaluates the sum of shares on ``[c]`` and at one random
challenge point ``i*`` drawn from shared randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._util import ReplayRandomness, chunk_projections, eval_coeffs, field_vector, np_horner, np_mul
from .engine import NodeState, PerPort, Protocol, ProverStrategy, View
from .errors import ImproperWitness, MalformedMessage, ProtocolParameterMismatch
from .field import (
    PrimeField,
    Polynomial,
    find_prime,
    is_prime,
    lagrange_basis,
    poly_eval,
    poly_interpolate,
    poly_sum,
    random_poly,
)
from .graph import Configuration, is_colorable, verify_proper_coloring

CHALLENGE = "i*"


@dataclass(frozen=True)
class ColoringParams:
    n: int
    c: int
    q: int
    s: Fraction | None = None
    challenge_mode: str = "shared"

    @classmethod
    def build(cls, n: int, c: int = 3, s=None, q: int | None = None,
              challenge_mode: str = "shared") -> "ColoringParams":
        if c < 2:
            raise ProtocolParameterMismatch("need at least 2 colors")
        if challenge_mode not in ("shared", "private"):
            raise ProtocolParameterMismatch(f"unknown challenge mode {challenge_mode!r}")
        if s is not None:
            s = Fraction(s)
            if not 0 < s < 1:
                raise ProtocolParameterMismatch("soundness target must lie in (0, 1)")
        if q is None:
            q = default_modulus(n, c, s)
        if not is_prime(q):
            raise ProtocolParameterMismatch(f"q={q} is not prime")
        if q <= c:
            raise ProtocolParameterMismatch(f"q={q} leaves no challenge point outside [{c}]")
        return cls(n, c, q, s, challenge_mode)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    @property
    def admissible(self) -> int:
        return self.q - self.c

    @property
    def share_degree(self) -> int:
        return 2 * self.c

    def soundness_bound(self) -> Fraction:
        """Acceptance bound for an improperly colored node: 2c / (q - c)."""
        return Fraction(2 * self.c, self.q - self.c)

    def cert_elements(self) -> int:
        return 2 + 2 * (2 * self.c + 1)

    def edge_elements(self) -> int:
        # c evaluations on [c], one at i*, one C_u(i*); private mode adds the challenge itself
        return self.c + 2 + (1 if self.challenge_mode == "private" else 0)

    def to_dict(self) -> dict:
        return {"n": self.n, "c": self.c, "q": self.q, "s": None if self.s is None else str(self.s),
                "challenge_mode": self.challenge_mode, "share_degree": self.share_degree,
                "admissible_challenges": self.admissible,
                "element_bits": math.ceil(math.log2(self.q))}


def default_modulus(n: int, c: int = 3, s=None) -> int:
    """Smallest prime in (3c/s, 6c/s] with a soundness target, else in (m, 2m] with m = max(n, c+1)."""
    if s is not None:
        s = Fraction(s)
        lo = math.floor(Fraction(3 * c) / s) + 1
        hi = math.floor(Fraction(6 * c) / s)
        return find_prime(lo, hi)
    m = max(n, c + 1)
    return find_prime(m + 1, 2 * m)


@lru_cache(maxsize=64)
def _color_basis(q: int, c: int) -> tuple:
    return lagrange_basis(q, tuple(range(c + 1)))


def coloring_polynomial(col: int, r_u: int, c: int, q: int) -> Polynomial:
    """Degree <= c polynomial: 1 at ``col``, 0 elsewhere on [c], ``r_u`` at c."""
    basis = _color_basis(q, c)
    a, b = basis[col], basis[c]
    return Polynomial(PrimeField(q), tuple((x + r_u * y) % q for x, y in zip(a, b)), c)


def coloring_polynomial_interp(col: int, r_u: int, c: int, q: int) -> Polynomial:
    """Same polynomial built by generic interpolation (used as a cross-check)."""
    pts = [(i, 1 if i == col else 0) for i in range(c)] + [(c, r_u)]
    return poly_interpolate(PrimeField(q), pts)


@dataclass(frozen=True)
class ColoringCert:
    col: int
    r: int
    p0: tuple
    h: tuple


@dataclass(frozen=True)
class ColoringNeighborMsg:
    h_evals: tuple  # H_u at 0..c-1 then at i*
    c_eval: int


@dataclass(frozen=True)
class ChallengeMsg:
    """Private-randomness round 1: evaluations on [c] plus the sender's own challenge."""

    h_evals: tuple
    challenge: int


@dataclass(frozen=True)
class ChallengeReply:
    h_eval: int
    c_eval: int


# -- prover -------------------------------------------------------------------

def _share(config: Configuration, params: ColoringParams, cols: Sequence[int], rs: Sequence[int],
           rng) -> list[ColoringCert]:
    F = params.field
    q, c = params.q, params.c
    C = [coloring_polynomial(cols[u], rs[u], c, q) for u in range(config.n)]
    H = [random_poly(F, 2 * c, rng) for _ in range(config.n)]
    certs = []
    for u in range(config.n):
        nbrs = config.port_order[u]
        P_u = C[u] * poly_sum(F, (C[v] for v in nbrs), c)
        P0 = P_u - poly_sum(F, (H[v] for v in nbrs), 2 * c)
        certs.append(ColoringCert(cols[u], rs[u], P0.padded(), H[u].padded()))
    return certs


def merlin_coloring(config: Configuration, witness: Sequence[int], params: ColoringParams, prover_rng,
                    check: bool = True) -> list[ColoringCert]:
    """Honest certificate assignment; ``check=False`` runs the same algebra on a bad witness."""
    c = params.c
    if check and not verify_proper_coloring(config, witness, c):
        raise ImproperWitness("witness is not a proper coloring")
    if any(not 0 <= x < c for x in witness):
        raise ImproperWitness(f"witness uses colors outside [{c}]")
    perm = prover_rng.permutation(c)
    cols = [perm[x] for x in witness]
    rs = [prover_rng.randrange(params.q) for _ in range(config.n)]
    return _share(config, params, cols, rs, prover_rng)


def _shared_sum(config: Configuration, certs: Sequence[ColoringCert], params: ColoringParams, u: int) -> Polynomial:
    """P0_u + sum of neighbor helpers: what node u's checks actually see."""
    F = params.field
    parts = [Polynomial(F, certs[u].p0, 2 * params.c)]
    parts += [Polynomial(F, certs[v].h, 2 * params.c) for v in config.port_order[u]]
    return poly_sum(F, parts, 2 * params.c)


def zero_force(config: Configuration, certs: list[ColoringCert], params: ColoringParams,
               roots: Sequence[int] = ()) -> list[ColoringCert]:
    """Rewrite local shares so every nullity check on [c] passes.

    The correction ``D`` has degree <= 2c, equals ``-P~_u`` on ``[c]`` and
    vanishes on ``roots`` (challenge points the cheater wants to survive).
    """
    F = params.field
    c = params.c
    out = list(certs)
    for u in range(config.n):
        total = _shared_sum(config, certs, params, u)
        vals = [total(i) for i in range(c)]
        if not any(vals):
            continue
        pts = [(i, -v) for i, v in enumerate(vals)] + [(x, 0) for x in roots[: c + 1]]
        D = poly_interpolate(F, pts)
        P0 = Polynomial(F, certs[u].p0, 2 * c) + D
        out[u] = ColoringCert(certs[u].col, certs[u].r, Polynomial(F, P0.coeffs, 2 * c).padded(), certs[u].h)
    return out


class HonestColoring(ProverStrategy):
    honest = True
    name = "honest"

    def __init__(self, witness: Sequence[int]):
        self.witness = list(witness)

    def certify(self, config, protocol, rng):
        return merlin_coloring(config, self.witness, protocol.params, rng)


class WrongWitness(ProverStrategy):
    """Honest algebra on an improper witness: the nullity check catches it."""

    name = "wrong-witness"

    def __init__(self, witness: Sequence[int]):
        self.witness = list(witness)

    def certify(self, config, protocol, rng):
        return merlin_coloring(config, self.witness, protocol.params, rng, check=False)


class ZeroForcing(ProverStrategy):
    """Honest algebra on an improper witness, then shares overwritten to vanish on [c]."""

    name = "zero-forcing"

    def __init__(self, witness: Sequence[int]):
        self.witness = list(witness)

    def certify(self, config, protocol, rng):
        params = protocol.params
        certs = merlin_coloring(config, self.witness, params, rng, check=False)
        return zero_force(config, certs, params)


class MaxRoots(ZeroForcing):
    """Zero-forcing whose correction also vanishes on c+1 chosen challenge points."""

    name = "max-roots"

    def certify(self, config, protocol, rng):
        params = protocol.params
        certs = merlin_coloring(config, self.witness, params, rng, check=False)
        roots = list(range(params.c, min(params.q, 2 * params.c + 1)))
        return zero_force(config, certs, params, roots)


# -- node logic ---------------------------------------------------------------

def parse_cert(cert, params: ColoringParams) -> ColoringCert:
    if not isinstance(cert, ColoringCert):
        raise MalformedMessage("not a coloring certificate")
    q, c = params.q, params.c
    if not isinstance(cert.col, int) or not 0 <= cert.col < c:
        raise MalformedMessage("color outside palette")
    field_vector((cert.r,), 1, q)
    field_vector(cert.p0, 2 * c + 1, q)
    field_vector(cert.h, 2 * c + 1, q)
    return cert


def _ceval_coeffs(cert: ColoringCert, x: int, params: ColoringParams) -> int:
    return poly_eval(coloring_polynomial(cert.col, cert.r, params.c, params.q), x)


def draw_challenge(state: NodeState, rand, params: ColoringParams) -> int:
    node = state.ident if params.challenge_mode == "private" else None
    return rand.uniform(CHALLENGE, params.c, params.q, node=node)


def node_coloring_round(state: NodeState, cert, rand, params: ColoringParams) -> ColoringNeighborMsg:
    cert = parse_cert(cert, params)
    q, c = params.q, params.c
    i_star = draw_challenge(state, rand, params)
    h_evals = tuple(eval_coeffs(cert.h, i, q) for i in range(c)) + (eval_coeffs(cert.h, i_star, q),)
    return ColoringNeighborMsg(h_evals, _ceval_coeffs(cert, i_star, params))


def _check(cert: ColoringCert, params: ColoringParams, i_star: int,
           h_on_palette: Sequence[tuple], h_star: Sequence[int], c_star: Sequence[int]) -> bool:
    q, c = params.q, params.c
    for i in range(c):
        if (eval_coeffs(cert.p0, i, q) + sum(h[i] for h in h_on_palette)) % q != 0:
            return False
    lhs = _ceval_coeffs(cert, i_star, params) * sum(c_star) % q
    rhs = (eval_coeffs(cert.p0, i_star, q) + sum(h_star)) % q
    return lhs == rhs


def node_coloring_verify(state: NodeState, cert, rand, gamma: tuple, params: ColoringParams) -> bool:
    cert = parse_cert(cert, params)
    q, c = params.q, params.c
    if len(gamma) != state.degree:
        raise MalformedMessage("missing neighbor messages")
    for m in gamma:
        if not isinstance(m, ColoringNeighborMsg):
            raise MalformedMessage("bad neighbor message")
        field_vector(m.h_evals, c + 1, q)
        field_vector((m.c_eval,), 1, q)
    i_star = draw_challenge(state, rand, params)
    return _check(cert, params, i_star, [m.h_evals[:c] for m in gamma],
                  [m.h_evals[c] for m in gamma], [m.c_eval for m in gamma])


class ColoringProtocol(Protocol):
    name = "coloring"

    def __init__(self, params: ColoringParams):
        self.params = params
        self.rounds = 2 if params.challenge_mode == "private" else 1
        self.challenge_scope = "per_node" if params.challenge_mode == "private" else "shared"

    @classmethod
    def for_config(cls, config: Configuration, c: int = 3, s=None, q: int | None = None,
                   challenge_mode: str = "shared") -> "ColoringProtocol":
        return cls(ColoringParams.build(config.n, c, s, q, challenge_mode))

    def check_config(self, config):
        if config.n > self.params.n:
            raise ProtocolParameterMismatch(f"n={config.n} exceeds the parameter bound {self.params.n}")
        if config.max_degree >= self.params.q:
            raise ProtocolParameterMismatch("q must exceed the maximum degree")

    def in_language(self, config):
        return is_colorable(config, self.params.c)

    def send(self, state, cert, rand, round_no, inbox):
        p = self.params
        if p.challenge_mode == "shared":
            return node_coloring_round(state, cert, rand, p)
        cert = parse_cert(cert, p)
        q, c = p.q, p.c
        if round_no == 0:
            i_star = draw_challenge(state, rand, p)
            return ChallengeMsg(tuple(eval_coeffs(cert.h, i, q) for i in range(c)), i_star)
        replies = []
        for m in inbox[0]:
            if not isinstance(m, ChallengeMsg) or not isinstance(m.challenge, int) \
                    or not c <= m.challenge < q:
                replies.append(None)
            else:
                replies.append(ChallengeReply(eval_coeffs(cert.h, m.challenge, q), _ceval_coeffs(cert, m.challenge, p)))
        return PerPort(replies)

    def decide(self, state, cert, rand, gamma):
        p = self.params
        if p.challenge_mode == "shared":
            return node_coloring_verify(state, cert, rand, gamma, p)
        cert = parse_cert(cert, p)
        q, c = p.q, p.c
        if len(gamma) != state.degree:
            raise MalformedMessage("missing neighbor messages")
        for first, reply in gamma:
            if not isinstance(first, ChallengeMsg) or not isinstance(reply, ChallengeReply):
                raise MalformedMessage("bad neighbor message")
            field_vector(first.h_evals, c, q)
            field_vector((reply.h_eval, reply.c_eval), 2, q)
        i_star = draw_challenge(state, rand, p)
        return _check(cert, p, i_star, [f.h_evals for f, _ in gamma],
                      [r.h_eval for _, r in gamma], [r.c_eval for _, r in gamma])

    def cert_size(self, cert):
        cert = parse_cert(cert, self.params)
        return 2 + len(cert.p0) + len(cert.h)

    def message_size(self, msg):
        if isinstance(msg, ColoringNeighborMsg):
            return len(msg.h_evals) + 1
        if isinstance(msg, ChallengeMsg):
            return len(msg.h_evals) + 1
        if isinstance(msg, ChallengeReply):
            return 2
        raise MalformedMessage("unknown message type")

    def cert_bound(self):
        return self.params.cert_elements()

    def message_bound(self):
        return self.params.edge_elements()

    def challenge_space(self):
        return CHALLENGE, self.params.c, self.params.q

    def describe(self):
        return {"protocol": self.name, **self.params.to_dict()}


# -- simulator ----------------------------------------------------------------

def simulate_coloring_view(state: NodeState, params: ColoringParams, sim_rng) -> View:
    """A view for node ``state`` drawn without the graph or the coloring.

    Received values are uniform subject to exactly the two verification
    equations; the neighbor on the lowest port absorbs both constraints.
    """
    if params.challenge_mode != "shared":
        raise ProtocolParameterMismatch("the simulator covers the shared-challenge protocol")
    q, c = params.q, params.c
    d = state.degree
    i_star = sim_rng.randrange(q - c) + c
    col = sim_rng.randrange(c)
    r_u = sim_rng.randrange(q)
    h_u = tuple(sim_rng.randrange(q) for _ in range(2 * c + 1))
    p0 = tuple(sim_rng.randrange(q) for _ in range(2 * c + 1))

    h = [[0] * (c + 1) for _ in range(d)]
    for i in range(c):
        rest = 0
        for p in range(1, d):
            h[p][i] = sim_rng.randrange(q)
            rest += h[p][i]
        h[0][i] = -(eval_coeffs(p0, i, q) + rest) % q
    c_vals = [sim_rng.randrange(q) for _ in range(d)]
    rest = 0
    for p in range(1, d):
        h[p][c] = sim_rng.randrange(q)
        rest += h[p][c]
    cu_star = poly_eval(coloring_polynomial(col, r_u, c, q), i_star)
    h[0][c] = (cu_star * sum(c_vals) - eval_coeffs(p0, i_star, q) - rest) % q

    gamma = tuple(ColoringNeighborMsg(tuple(h[p]), c_vals[p]) for p in range(d))
    return View(state, {CHALLENGE: i_star}, ColoringCert(col, r_u, p0, h_u), gamma)


def verify_view(view: View, params: ColoringParams) -> bool:
    """Run the real node verification on a (real or simulated) view."""
    try:
        return node_coloring_verify(view.state, view.sigma, ReplayRandomness(view.r), view.gamma, params)
    except MalformedMessage:
        return False


# -- vectorized samplers for distribution tests --------------------------------

def projection_columns(params: ColoringParams, degree: int) -> list[str]:
    c = params.c
    cols = ["istar", "col", "r"]
    cols += [f"hu{k}" for k in range(2 * c + 1)] + [f"p0_{k}" for k in range(2 * c + 1)]
    for p in range(degree):
        cols += [f"h{i}_p{p}" for i in range(c)] + [f"hstar_p{p}", f"c_p{p}"]
    return cols


def view_projection(view: View) -> dict:
    """Flatten a coloring view into the named columns used by the samplers."""
    cert = view.sigma
    row = {"istar": view.r[CHALLENGE], "col": cert.col, "r": cert.r}
    row.update({f"hu{k}": x for k, x in enumerate(cert.h)})
    row.update({f"p0_{k}": x for k, x in enumerate(cert.p0)})
    for p, m in enumerate(view.gamma):
        c = len(m.h_evals) - 1
        row.update({f"h{i}_p{p}": m.h_evals[i] for i in range(c)})
        row[f"hstar_p{p}"] = m.h_evals[c]
        row[f"c_p{p}"] = m.c_eval
    return row


def sample_real_views(config: Configuration, witness: Sequence[int], node: int, params: ColoringParams,
                      size: int, rng: np.random.Generator) -> dict:
    """Vectorized honest-run views of ``node``: same algebra as the prover and nodes above.

    Only the randomness ``node`` can observe is sampled: the color permutation,
    ``r`` and helpers of ``node`` and its neighbors, and the challenge.
    """
    q, c = params.q, params.c
    if q >= 1 << 31:
        raise ValueError("vectorized sampler needs q < 2^31")
    basis = np.array(_color_basis(q, c), dtype=np.int64)  # (c+1, c+1)
    nbrs = list(config.port_order[node])
    involved = [node] + nbrs
    perm = rng.permuted(np.tile(np.arange(c), (size, 1)), axis=1)
    col = {v: perm[:, witness[v]] for v in involved}
    r = {v: rng.integers(0, q, size) for v in involved}
    coefC = {v: (basis[col[v]] + r[v][:, None] * basis[c]) % q for v in involved}
    H = {v: rng.integers(0, q, (size, 2 * c + 1)) for v in involved}
    istar = rng.integers(c, q, size)

    sumC = np.zeros((size, c + 1), dtype=np.int64)
    sumH = np.zeros((size, 2 * c + 1), dtype=np.int64)
    for v in nbrs:
        sumC = (sumC + coefC[v]) % q
        sumH = (sumH + H[v]) % q
    P = np_mul(coefC[node], sumC, q)
    P0 = (P - sumH) % q

    out = {"istar": istar, "col": col[node], "r": r[node]}
    for k in range(2 * c + 1):
        out[f"hu{k}"] = H[node][:, k]
        out[f"p0_{k}"] = P0[:, k]
    for p, v in enumerate(nbrs):
        for i in range(c):
            out[f"h{i}_p{p}"] = np_horner(H[v], i, q)
        out[f"hstar_p{p}"] = np_horner(H[v], istar, q)
        out[f"c_p{p}"] = np_horner(coefC[v], istar, q)
    return out


def sample_simulated_views(degree: int, params: ColoringParams, size: int, rng: np.random.Generator) -> dict:
    """Vectorized counterpart of :func:`simulate_coloring_view`."""
    q, c = params.q, params.c
    basis = np.array(_color_basis(q, c), dtype=np.int64)
    istar = rng.integers(c, q, size)
    col = rng.integers(0, c, size)
    r_u = rng.integers(0, q, size)
    hu = rng.integers(0, q, (size, 2 * c + 1))
    p0 = rng.integers(0, q, (size, 2 * c + 1))
    out = {"istar": istar, "col": col, "r": r_u}
    for k in range(2 * c + 1):
        out[f"hu{k}"] = hu[:, k]
        out[f"p0_{k}"] = p0[:, k]
    for i in range(c):
        rest = np.zeros(size, dtype=np.int64)
        for p in range(1, degree):
            out[f"h{i}_p{p}"] = rng.integers(0, q, size)
            rest = (rest + out[f"h{i}_p{p}"]) % q
        out[f"h{i}_p0"] = (-(np_horner(p0, i, q) + rest)) % q
    csum = np.zeros(size, dtype=np.int64)
    for p in range(degree):
        out[f"c_p{p}"] = rng.integers(0, q, size)
        csum = (csum + out[f"c_p{p}"]) % q
    rest = np.zeros(size, dtype=np.int64)
    for p in range(1, degree):
        out[f"hstar_p{p}"] = rng.integers(0, q, size)
        rest = (rest + out[f"hstar_p{p}"]) % q
    cu = np_horner((basis[col] + r_u[:, None] * basis[c]) % q, istar, q)
    out["hstar_p0"] = (cu * csum - np_horner(p0, istar, q) - rest) % q
    return out


def views_from_samples(samples: dict, state: NodeState, params: ColoringParams) -> list[View]:
    """Rebuild :class:`View` objects from sampler columns (shared-challenge mode)."""
    c = params.c
    cols = {k: v.tolist() for k, v in samples.items()}
    out = []
    for s in range(len(cols["istar"])):
        cert = ColoringCert(cols["col"][s], cols["r"][s], tuple(cols[f"p0_{k}"][s] for k in range(2 * c + 1)),
                            tuple(cols[f"hu{k}"][s] for k in range(2 * c + 1)))
        gamma = tuple(ColoringNeighborMsg(tuple(cols[f"h{i}_p{p}"][s] for i in range(c)) + (cols[f"hstar_p{p}"][s],),
                                          cols[f"c_p{p}"][s]) for p in range(state.degree))
        out.append(View(state, {CHALLENGE: cols["istar"][s]}, cert, gamma))
    return out



def received_projections(degree: int, c: int, width: int = 3) -> list[list[str]]:
    """Joint projections of what a node receives, ``width`` columns at most (small enough for TV)."""
    groups = [["istar"] + [f"h{i}_p{p}" for i in range(c)] + [f"hstar_p{p}", f"c_p{p}"] for p in range(degree)]
    if degree > 1:
        groups.append([f"c_p{p}" for p in range(degree)])
        groups.append([f"hstar_p{p}" for p in range(degree)])
    return chunk_projections(groups, width)
