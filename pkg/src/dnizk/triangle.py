"""Zero-knowledge certification of triangle-freeness with a size trade-off.

Node identifiers (or, in the ID-free variant, colors of a distance-3
coloring) are split into pairs ``(i, t)`` with ``i < B = ceil(n/alpha)`` and
``t < alpha``. For each ``t`` node ``u`` owns a degree <= B polynomial
``P_{u,t}`` that is 1 at ``i`` iff slot ``(i, t)`` is one of its neighbors,
and random at ``B``. ``P_u = sum_v sum_t P_{u,t} P_{v,t}`` vanishes on
``[B]`` iff no edge at ``u`` closes a triangle. It is shared between ``u`` and
its neighbors exactly as in the coloring protocol.

Larger ``alpha`` shrinks certificates (about 2n/alpha elements) and grows
neighbor messages (about alpha elements).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._util import ReplayRandomness, chunk_projections, eval_coeffs, field_vector, np_horner, np_mul
from .engine import NodeState, Protocol, ProverStrategy, View
from .errors import IdOutOfRange, ImproperWitness, MalformedMessage, ProtocolParameterMismatch
from .field import PrimeField, Polynomial, find_prime, is_prime, lagrange_basis, poly_interpolate, poly_sum, random_poly
from .graph import Configuration, count_triangles, distance3_coloring

CHALLENGE = "i*"
ID_MODES = ("ids", "dist3colors")


@dataclass(frozen=True)
class TriangleParams:
    n: int  # number of slots: n, or n' = min(n, Delta^3) in ID-free mode
    alpha: int  # requested alpha after clamping to >= 3
    B: int
    alpha_eff: int
    q: int
    id_mode: str = "ids"
    improved: bool = False
    n_nodes: int | None = None
    delta: int | None = None

    @classmethod
    def build(cls, n: int, alpha: int = 3, q: int | None = None, id_mode: str = "ids",
              improved: bool = False, delta: int | None = None) -> "TriangleParams":
        if id_mode not in ID_MODES:
            raise ProtocolParameterMismatch(f"unknown id mode {id_mode!r}")
        n_nodes = n
        if id_mode == "dist3colors":
            if delta is None or delta < 1:
                raise ProtocolParameterMismatch("the ID-free mode needs a degree bound")
            n = idfree_palette(n, delta)
        alpha = max(int(alpha), 3)
        B = math.ceil(n / alpha)
        alpha_eff = math.ceil(n / B)
        if q is None:
            q = default_modulus(n, alpha_eff, improved)
        if not is_prime(q):
            raise ProtocolParameterMismatch(f"q={q} is not prime")
        if q <= n * alpha_eff and not improved:
            raise ProtocolParameterMismatch(f"q={q} must exceed n*alpha={n * alpha_eff}")
        if q <= B:
            raise ProtocolParameterMismatch("q leaves no challenge point outside [B]")
        return cls(n, alpha, B, alpha_eff, q, id_mode, improved, n_nodes, delta)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    @property
    def admissible(self) -> int:
        return self.q - self.B

    def soundness_bound(self) -> Fraction:
        """2B / (q - B): the degree of P_u minus Q_u over the challenge space."""
        return Fraction(2 * self.B, self.q - self.B)

    def cert_elements(self) -> int:
        return self.alpha_eff + 2 * (2 * self.B + 1)

    def edge_elements(self) -> int:
        return (self.B + 1) + self.alpha_eff

    def color_bits(self) -> int:
        return max(1, math.ceil(math.log2(self.n)))

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha": self.alpha, "B": self.B, "alpha_eff": self.alpha_eff, "q": self.q,
                "id_mode": self.id_mode, "improved_soundness": self.improved,
                "n_nodes": self.n_nodes, "delta": self.delta, "share_degree": 2 * self.B,
                "admissible_challenges": self.admissible,
                "element_bits": math.ceil(math.log2(self.q))}


def idfree_palette(n: int, delta: int) -> int:
    """n' = min(n, Delta^3); a single edge (Delta = 1) still needs two colors."""
    return min(n, max(delta ** 3, 2))


def default_modulus(n: int, alpha: int, improved: bool = False) -> int:
    """Smallest prime in (n*alpha, 2n*alpha], or in (n^3/alpha, 2n^3/alpha] when improved."""
    if improved:
        lo = math.floor(Fraction(n ** 3, alpha)) + 1
        hi = math.floor(Fraction(2 * n ** 3, alpha))
        lo = max(lo, n * alpha + 1)
        hi = max(hi, 2 * lo)
        return find_prime(lo, hi)
    return find_prime(n * alpha + 1, 2 * n * alpha)


def id_split(ident: int, B: int, alpha: int) -> tuple[int, int]:
    """Dense identifier -> slot ``(ident mod B, ident div B)``."""
    if not isinstance(ident, int) or not 0 <= ident < B * alpha:
        raise IdOutOfRange(f"identifier {ident} outside [0, {B * alpha})")
    return ident % B, ident // B


@lru_cache(maxsize=64)
def _slot_basis(q: int, B: int) -> tuple:
    return lagrange_basis(q, tuple(range(B + 1)))


def slot_polynomial(slots: frozenset, t: int, r_ut: int, params: TriangleParams) -> Polynomial:
    """Degree <= B polynomial: 1 at i iff (i, t) in ``slots``, 0 elsewhere on [B], ``r_ut`` at B."""
    q, B = params.q, params.B
    basis = _slot_basis(q, B)
    acc = [r_ut * x for x in basis[B]]
    for i in range(B):
        if (i, t) in slots:
            acc = [a + b for a, b in zip(acc, basis[i])]
    return Polynomial(params.field, tuple(a % q for a in acc), B)


def neighborhood_polynomial(u: int, t: int, config: Configuration, r_ut: int, params: TriangleParams) -> Polynomial:
    """P_{u,t} for node ``u`` of ``config`` in ID mode."""
    slots = frozenset(id_split(config.ids[v] - 1, params.B, params.alpha_eff) for v in config.adjacency[u])
    return slot_polynomial(slots, t, r_ut, params)


def neighborhood_polynomial_interp(slots: frozenset, t: int, r_ut: int, params: TriangleParams) -> Polynomial:
    pts = [(i, 1 if (i, t) in slots else 0) for i in range(params.B)] + [(params.B, r_ut)]
    return poly_interpolate(params.field, pts)


@dataclass(frozen=True)
class ColorBundle:
    own: int
    neighbors: tuple  # colors of the neighbors, in the receiving node's port order


@dataclass(frozen=True)
class TriangleCert:
    r: tuple
    p0: tuple
    h: tuple
    colors: ColorBundle | None = None


@dataclass(frozen=True)
class TriangleNeighborMsg:
    h_evals: tuple  # H_u on [B] then at i*
    p_evals: tuple  # P_{u,t}(i*) for t < alpha


# -- prover -------------------------------------------------------------------

def idfree_setup(config: Configuration, params: TriangleParams, prover_rng,
                 coloring: Sequence[int] | None = None) -> list[ColorBundle]:
    """Per-node color bundles from a randomly relabeled distance-3 coloring."""
    base = list(coloring) if coloring is not None else distance3_coloring(config)
    palette = params.n
    if max(base) >= palette:
        raise ProtocolParameterMismatch(f"coloring uses {max(base) + 1} colors, palette has {palette}")
    perm = prover_rng.permutation(palette)
    col = [perm[x] for x in base]
    return [ColorBundle(col[u], tuple(col[v] for v in config.port_order[u])) for u in range(config.n)]


def _slot_of(ident: int, params: TriangleParams) -> tuple[int, int]:
    return id_split(ident, params.B, params.alpha_eff)


def merlin_triangle(config: Configuration, params: TriangleParams, prover_rng,
                    coloring: Sequence[int] | None = None) -> list[TriangleCert]:
    """Certificates from the honest algebra (also used verbatim on graphs with triangles)."""
    F = params.field
    B, A, q = params.B, params.alpha_eff, params.q
    if params.id_mode == "dist3colors":
        bundles = idfree_setup(config, params, prover_rng, coloring)
        label = [b.own for b in bundles]
    else:
        bundles = [None] * config.n
        label = [i - 1 for i in config.ids]
    slots_of = [frozenset(_slot_of(label[v], params) for v in config.adjacency[u]) for u in range(config.n)]
    r = [tuple(prover_rng.randrange(q) for _ in range(A)) for _ in range(config.n)]
    P = [[slot_polynomial(slots_of[u], t, r[u][t], params) for t in range(A)] for u in range(config.n)]
    H = [random_poly(F, 2 * B, prover_rng) for _ in range(config.n)]
    certs = []
    for u in range(config.n):
        nbrs = config.port_order[u]
        terms = [P[u][t] * poly_sum(F, (P[v][t] for v in nbrs), B) for t in range(A)]
        P_u = poly_sum(F, terms, 2 * B)
        P0 = P_u - poly_sum(F, (H[v] for v in nbrs), 2 * B)
        certs.append(TriangleCert(r[u], P0.padded(), H[u].padded(), bundles[u]))
    return certs


def zero_force(config: Configuration, certs: list[TriangleCert], params: TriangleParams,
               roots: Sequence[int] = ()) -> list[TriangleCert]:
    """Rewrite local shares so the nullity checks on [B] pass (optionally vanishing on ``roots``)."""
    F = params.field
    B = params.B
    out = list(certs)
    for u in range(config.n):
        parts = [Polynomial(F, certs[u].p0, 2 * B)]
        parts += [Polynomial(F, certs[v].h, 2 * B) for v in config.port_order[u]]
        total = poly_sum(F, parts, 2 * B)
        vals = [total(i) for i in range(B)]
        if not any(vals):
            continue
        pts = [(i, -v) for i, v in enumerate(vals)] + [(x, 0) for x in roots[: B + 1]]
        P0 = Polynomial(F, certs[u].p0, 2 * B) + poly_interpolate(F, pts)
        out[u] = TriangleCert(certs[u].r, Polynomial(F, P0.coeffs, 2 * B).padded(), certs[u].h, certs[u].colors)
    return out


class HonestTriangle(ProverStrategy):
    honest = True
    name = "honest"

    def __init__(self, coloring: Sequence[int] | None = None):
        self.coloring = coloring

    def certify(self, config, protocol, rng):
        if count_triangles(config):
            raise ImproperWitness("graph contains a triangle")
        return merlin_triangle(config, protocol.params, rng, self.coloring)


class TriangleAlgebra(ProverStrategy):
    """Honest algebra on a graph that has triangles; caught by the nullity check."""

    name = "dishonest-on-triangle"

    def __init__(self, coloring: Sequence[int] | None = None):
        self.coloring = coloring

    def certify(self, config, protocol, rng):
        return merlin_triangle(config, protocol.params, rng, self.coloring)


class ZeroForcing(TriangleAlgebra):
    name = "zero-forcing"

    def certify(self, config, protocol, rng):
        return zero_force(config, super().certify(config, protocol, rng), protocol.params)


class MaxRoots(TriangleAlgebra):
    """Zero-forcing whose correction also vanishes on B+1 chosen challenge points."""

    name = "max-roots"

    def certify(self, config, protocol, rng):
        p = protocol.params
        roots = list(range(p.B, min(p.q, 2 * p.B + 1)))
        return zero_force(config, super().certify(config, protocol, rng), p, roots)


# -- node logic ---------------------------------------------------------------

def parse_cert(cert, params: TriangleParams) -> TriangleCert:
    if not isinstance(cert, TriangleCert):
        raise MalformedMessage("not a triangle certificate")
    q, B = params.q, params.B
    field_vector(cert.r, params.alpha_eff, q)
    field_vector(cert.p0, 2 * B + 1, q)
    field_vector(cert.h, 2 * B + 1, q)
    if params.id_mode == "dist3colors":
        b = cert.colors
        if not isinstance(b, ColorBundle) or not isinstance(b.neighbors, tuple):
            raise MalformedMessage("missing color bundle")
        field_vector((b.own,) + b.neighbors, 1 + len(b.neighbors), params.n)
    return cert


def neighbor_slots(state: NodeState, cert: TriangleCert, params: TriangleParams) -> frozenset:
    """Slots of the node's neighbors, from IDs or from the color bundle."""
    if params.id_mode == "dist3colors":
        if len(cert.colors.neighbors) != state.degree:
            raise MalformedMessage("color bundle does not match the degree")
        labels = cert.colors.neighbors
    else:
        if state.neighbor_ids is None:
            raise ProtocolParameterMismatch("ID mode needs neighbor IDs (not KT0)")
        labels = [i - 1 for i in state.neighbor_ids]
    try:
        return frozenset(_slot_of(x, params) for x in labels)
    except IdOutOfRange as exc:
        raise MalformedMessage(str(exc)) from exc


def _own_evals(state: NodeState, cert: TriangleCert, params: TriangleParams, x: int) -> list[int]:
    slots = neighbor_slots(state, cert, params)
    return [slot_polynomial(slots, t, cert.r[t], params)(x) for t in range(params.alpha_eff)]


def node_triangle_round(state: NodeState, cert, rand, params: TriangleParams) -> TriangleNeighborMsg:
    cert = parse_cert(cert, params)
    q, B = params.q, params.B
    i_star = rand.uniform(CHALLENGE, B, q)
    h_evals = tuple(eval_coeffs(cert.h, i, q) for i in range(B)) + (eval_coeffs(cert.h, i_star, q),)
    return TriangleNeighborMsg(h_evals, tuple(_own_evals(state, cert, params, i_star)))


def node_triangle_verify(state: NodeState, cert, rand, gamma: tuple, params: TriangleParams) -> bool:
    cert = parse_cert(cert, params)
    q, B, A = params.q, params.B, params.alpha_eff
    if len(gamma) != state.degree:
        raise MalformedMessage("missing neighbor messages")
    for m in gamma:
        if not isinstance(m, TriangleNeighborMsg):
            raise MalformedMessage("bad neighbor message")
        field_vector(m.h_evals, B + 1, q)
        field_vector(m.p_evals, A, q)
    i_star = rand.uniform(CHALLENGE, B, q)
    for i in range(B):
        if (eval_coeffs(cert.p0, i, q) + sum(m.h_evals[i] for m in gamma)) % q:
            return False
    own = _own_evals(state, cert, params, i_star)
    lhs = sum(own[t] * m.p_evals[t] for m in gamma for t in range(A)) % q
    rhs = (eval_coeffs(cert.p0, i_star, q) + sum(m.h_evals[B] for m in gamma)) % q
    return lhs == rhs


class TriangleProtocol(Protocol):
    name = "triangle"
    challenge_scope = "shared"

    def __init__(self, params: TriangleParams):
        self.params = params

    @classmethod
    def for_config(cls, config: Configuration, alpha: int = 3, q: int | None = None, id_mode: str = "ids",
                   improved: bool = False) -> "TriangleProtocol":
        delta = config.max_degree if id_mode == "dist3colors" else None
        return cls(TriangleParams.build(config.n, alpha, q, id_mode, improved, delta))

    def check_config(self, config):
        p = self.params
        if p.id_mode == "ids":
            if config.kt0:
                raise ProtocolParameterMismatch("ID mode cannot run in KT0; use the ID-free mode")
            if any(not 1 <= i <= p.n for i in config.ids):
                raise ProtocolParameterMismatch(f"ID mode needs IDs in [1, {p.n}]")
        else:
            if p.delta is not None and config.max_degree > p.delta:
                raise ProtocolParameterMismatch("degree bound exceeded")
            if p.n_nodes is not None and config.n > p.n_nodes:
                raise ProtocolParameterMismatch("more nodes than the parameters allow")

    def in_language(self, config):
        return count_triangles(config) == 0

    def send(self, state, cert, rand, round_no, inbox):
        return node_triangle_round(state, cert, rand, self.params)

    def decide(self, state, cert, rand, gamma):
        return node_triangle_verify(state, cert, rand, gamma, self.params)

    def cert_size(self, cert):
        cert = parse_cert(cert, self.params)
        return len(cert.r) + len(cert.p0) + len(cert.h)

    def bundle_bits(self, cert) -> int:
        """Extra certificate bits carrying the ID-free color bundle."""
        if cert.colors is None:
            return 0
        return (1 + len(cert.colors.neighbors)) * self.params.color_bits()

    def message_size(self, msg):
        if not isinstance(msg, TriangleNeighborMsg):
            raise MalformedMessage("unknown message type")
        return len(msg.h_evals) + len(msg.p_evals)

    def cert_bound(self):
        return self.params.cert_elements()

    def message_bound(self):
        return self.params.edge_elements()

    def challenge_space(self):
        return CHALLENGE, self.params.B, self.params.q

    def describe(self):
        return {"protocol": self.name, **self.params.to_dict()}


# -- simulator ----------------------------------------------------------------

def simulate_triangle_view(state: NodeState, params: TriangleParams, sim_rng) -> View:
    """View of ``state`` drawn from local knowledge only; lowest port absorbs the constraints."""
    q, B, A = params.q, params.B, params.alpha_eff
    d = state.degree
    i_star = sim_rng.randrange(q - B) + B
    r = tuple(sim_rng.randrange(q) for _ in range(A))
    h_u = tuple(sim_rng.randrange(q) for _ in range(2 * B + 1))
    p0 = tuple(sim_rng.randrange(q) for _ in range(2 * B + 1))
    bundle = None
    if params.id_mode == "dist3colors":
        colors = sim_rng.sample(range(params.n), d + 1)
        bundle = ColorBundle(colors[0], tuple(colors[1:]))
    cert = TriangleCert(r, p0, h_u, bundle)
    own = _own_evals(state, cert, params, i_star)

    h = [[0] * (B + 1) for _ in range(d)]
    for i in range(B):
        rest = 0
        for p in range(1, d):
            h[p][i] = sim_rng.randrange(q)
            rest += h[p][i]
        h[0][i] = -(eval_coeffs(p0, i, q) + rest) % q
    pv = [[sim_rng.randrange(q) for _ in range(A)] for _ in range(d)]
    rest = 0
    for p in range(1, d):
        h[p][B] = sim_rng.randrange(q)
        rest += h[p][B]
    lhs = sum(own[t] * pv[p][t] for p in range(d) for t in range(A))
    h[0][B] = (lhs - eval_coeffs(p0, i_star, q) - rest) % q
    gamma = tuple(TriangleNeighborMsg(tuple(h[p]), tuple(pv[p])) for p in range(d))
    return View(state, {CHALLENGE: i_star}, cert, gamma)


def verify_view(view: View, params: TriangleParams) -> bool:
    try:
        return node_triangle_verify(view.state, view.sigma, ReplayRandomness(view.r), view.gamma, params)
    except MalformedMessage:
        return False


# -- vectorized samplers for distribution tests --------------------------------

def view_projection(view: View) -> dict:
    cert = view.sigma
    row = {"istar": view.r[CHALLENGE]}
    row.update({f"r{t}": x for t, x in enumerate(cert.r)})
    row.update({f"hu{k}": x for k, x in enumerate(cert.h)})
    row.update({f"p0_{k}": x for k, x in enumerate(cert.p0)})
    for p, m in enumerate(view.gamma):
        B = len(m.h_evals) - 1
        row.update({f"h{i}_p{p}": m.h_evals[i] for i in range(B)})
        row[f"hstar_p{p}"] = m.h_evals[B]
        row.update({f"pv{t}_p{p}": x for t, x in enumerate(m.p_evals)})
    return row


def _np_slot_coeffs(slots: frozenset, t: int, r: np.ndarray, params: TriangleParams) -> np.ndarray:
    q, B = params.q, params.B
    basis = np.array(_slot_basis(q, B), dtype=np.int64)
    const = np.zeros(B + 1, dtype=np.int64)
    for i in range(B):
        if (i, t) in slots:
            const = (const + basis[i]) % q
    return (const[None, :] + r[:, None] * basis[B][None, :]) % q


def sample_real_views(config: Configuration, node: int, params: TriangleParams, size: int,
                      rng: np.random.Generator) -> dict:
    """Vectorized honest-run views of ``node`` (ID mode), mirroring :func:`merlin_triangle`."""
    q, B, A = params.q, params.B, params.alpha_eff
    if params.id_mode != "ids":
        raise ProtocolParameterMismatch("vectorized sampler covers the ID mode")
    nbrs = list(config.port_order[node])
    involved = [node] + nbrs
    slots = {w: frozenset(_slot_of(config.ids[v] - 1, params) for v in config.adjacency[w]) for w in involved}
    r = {w: rng.integers(0, q, (size, A)) for w in involved}
    Pc = {w: [_np_slot_coeffs(slots[w], t, r[w][:, t], params) for t in range(A)] for w in involved}
    H = {w: rng.integers(0, q, (size, 2 * B + 1)) for w in involved}
    istar = rng.integers(B, q, size)
    P = np.zeros((size, 2 * B + 1), dtype=np.int64)
    for t in range(A):
        s = np.zeros((size, B + 1), dtype=np.int64)
        for v in nbrs:
            s = (s + Pc[v][t]) % q
        P = (P + np_mul(Pc[node][t], s, q)) % q
    sumH = np.zeros((size, 2 * B + 1), dtype=np.int64)
    for v in nbrs:
        sumH = (sumH + H[v]) % q
    P0 = (P - sumH) % q
    out = {"istar": istar}
    for t in range(A):
        out[f"r{t}"] = r[node][:, t]
    for k in range(2 * B + 1):
        out[f"hu{k}"] = H[node][:, k]
        out[f"p0_{k}"] = P0[:, k]
    for p, v in enumerate(nbrs):
        for i in range(B):
            out[f"h{i}_p{p}"] = np_horner(H[v], i, q)
        out[f"hstar_p{p}"] = np_horner(H[v], istar, q)
        for t in range(A):
            out[f"pv{t}_p{p}"] = np_horner(Pc[v][t], istar, q)
    return out


def sample_simulated_views(state: NodeState, params: TriangleParams, size: int, rng: np.random.Generator) -> dict:
    """Vectorized counterpart of :func:`simulate_triangle_view` (ID mode)."""
    q, B, A = params.q, params.B, params.alpha_eff
    d = state.degree
    slots = frozenset(_slot_of(i - 1, params) for i in state.neighbor_ids)
    istar = rng.integers(B, q, size)
    r = rng.integers(0, q, (size, A))
    hu = rng.integers(0, q, (size, 2 * B + 1))
    p0 = rng.integers(0, q, (size, 2 * B + 1))
    out = {"istar": istar}
    for t in range(A):
        out[f"r{t}"] = r[:, t]
    for k in range(2 * B + 1):
        out[f"hu{k}"] = hu[:, k]
        out[f"p0_{k}"] = p0[:, k]
    for i in range(B):
        rest = np.zeros(size, dtype=np.int64)
        for p in range(1, d):
            out[f"h{i}_p{p}"] = rng.integers(0, q, size)
            rest = (rest + out[f"h{i}_p{p}"]) % q
        out[f"h{i}_p0"] = (-(np_horner(p0, i, q) + rest)) % q
    own = [np_horner(_np_slot_coeffs(slots, t, r[:, t], params), istar, q) for t in range(A)]
    lhs = np.zeros(size, dtype=np.int64)
    for p in range(d):
        for t in range(A):
            out[f"pv{t}_p{p}"] = rng.integers(0, q, size)
            lhs = (lhs + own[t] * out[f"pv{t}_p{p}"]) % q
    rest = np.zeros(size, dtype=np.int64)
    for p in range(1, d):
        out[f"hstar_p{p}"] = rng.integers(0, q, size)
        rest = (rest + out[f"hstar_p{p}"]) % q
    out["hstar_p0"] = (lhs - np_horner(p0, istar, q) - rest) % q
    return out


def views_from_samples(samples: dict, state: NodeState, params: TriangleParams) -> list[View]:
    """Rebuild :class:`View` objects from sampler columns (ID mode)."""
    B, A = params.B, params.alpha_eff
    cols = {k: v.tolist() for k, v in samples.items()}
    out = []
    for s in range(len(cols["istar"])):
        cert = TriangleCert(tuple(cols[f"r{t}"][s] for t in range(A)),
                            tuple(cols[f"p0_{k}"][s] for k in range(2 * B + 1)),
                            tuple(cols[f"hu{k}"][s] for k in range(2 * B + 1)))
        gamma = tuple(TriangleNeighborMsg(tuple(cols[f"h{i}_p{p}"][s] for i in range(B)) + (cols[f"hstar_p{p}"][s],),
                                          tuple(cols[f"pv{t}_p{p}"][s] for t in range(A)))
                      for p in range(state.degree))
        out.append(View(state, {CHALLENGE: cols["istar"][s]}, cert, gamma))
    return out



def received_projections(degree: int, params: TriangleParams, width: int = 3) -> list[list[str]]:
    """Joint projections of what a node receives, ``width`` columns at most (small enough for TV)."""
    B, A = params.B, params.alpha_eff
    groups = [["istar"] + [f"h{i}_p{p}" for i in range(B)] + [f"hstar_p{p}"] + [f"pv{t}_p{p}" for t in range(A)]
              for p in range(degree)]
    if degree > 1:
        groups.append([f"pv0_p{p}" for p in range(degree)])
        groups.append([f"hstar_p{p}" for p in range(degree)])
    return chunk_projections(groups, width)
