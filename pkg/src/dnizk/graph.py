"""Network configurations, instance generators and graph oracles.

Nodes are indexed ``0..n-1`` internally. Each node additionally carries an
ID (default ``index + 1``) and a port order over its neighbors; protocols
only ever see IDs and ports, never internal indices.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ConfigurationError


@dataclass(frozen=True)
class Configuration:
    n: int
    adjacency: tuple  # tuple[frozenset[int], ...]
    ids: tuple
    port_order: tuple  # per node, tuple of neighbor indices
    kt0: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.n
        if n < 1 or len(self.adjacency) != n:
            raise ConfigurationError("adjacency length does not match n")
        for u, nbrs in enumerate(self.adjacency):
            if u in nbrs:
                raise ConfigurationError(f"self-loop at {u}")
            for v in nbrs:
                if not 0 <= v < n or u not in self.adjacency[v]:
                    raise ConfigurationError(f"asymmetric or out-of-range edge {u}-{v}")
        if len(self.ids) != n or len(set(self.ids)) != n or min(self.ids) < 1:
            raise ConfigurationError("ids must be injective positive integers")
        if len(self.port_order) != n:
            raise ConfigurationError("port_order length does not match n")
        for u, ports in enumerate(self.port_order):
            if len(ports) != len(self.adjacency[u]) or set(ports) != self.adjacency[u]:
                raise ConfigurationError(f"port order of {u} does not list its neighborhood")
        if not is_connected(self.adjacency):
            raise ConfigurationError("configuration graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], ids: Sequence[int] | None = None,
                   kt0: bool = False, name: str = "") -> "Configuration":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ConfigurationError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        ids = tuple(ids) if ids is not None else tuple(range(1, n + 1))
        if len(ids) != n:
            raise ConfigurationError("ids length does not match n")
        ports = tuple(tuple(sorted(a, key=lambda v: ids[v])) for a in adj)
        return cls(n, tuple(frozenset(a) for a in adj), ids, ports, kt0, name)

    def neighbors(self, u: int) -> frozenset:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def port_of(self, u: int, v: int) -> int:
        """Port index at ``u`` leading to neighbor ``v``."""
        return self.port_order[u].index(v)

    def node_of_id(self, ident: int) -> int:
        return self.ids.index(ident)

    def with_ids(self, ids: Sequence[int]) -> "Configuration":
        ids = tuple(ids)
        ports = tuple(tuple(sorted(a, key=lambda v: ids[v])) for a in self.adjacency)
        return replace(self, ids=ids, port_order=ports)

    def scrambled(self, rng: random.Random) -> "Configuration":
        """Same graph with IDs permuted; catches protocols that assume id == index + 1."""
        ids = list(self.ids)
        rng.shuffle(ids)
        return self.with_ids(ids)

    def with_port_order(self, port_order: Sequence[Sequence[int]]) -> "Configuration":
        return replace(self, port_order=tuple(tuple(p) for p in port_order))

    def shuffled_ports(self, rng: random.Random) -> "Configuration":
        ports = []
        for p in self.port_order:
            p = list(p)
            rng.shuffle(p)
            ports.append(tuple(p))
        return replace(self, port_order=tuple(ports))

    def as_kt0(self, kt0: bool = True) -> "Configuration":
        return replace(self, kt0=kt0)


def is_connected(adjacency: Sequence[Iterable[int]]) -> bool:
    n = len(adjacency)
    if n == 0:
        return True
    seen = {0}
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == n


def bfs_distances(config: Configuration, src: int, limit: int | None = None) -> dict[int, int]:
    dist = {src: 0}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for v in config.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                todo.append(v)
    return dist


# -- colorings ---------------------------------------------------------------

def verify_proper_coloring(config: Configuration, col: Sequence[int], c: int | None = None) -> bool:
    if len(col) != config.n:
        return False
    if c is not None and any(not 0 <= x < c for x in col):
        return False
    return all(col[u] != col[v] for u, v in config.edges())


def find_coloring(config: Configuration, c: int) -> list[int] | None:
    """Backtracking search for a proper c-coloring; None when none exists."""
    order = sorted(range(config.n), key=lambda u: -config.degree(u))
    col = [-1] * config.n

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        used = {col[v] for v in config.adjacency[u]}
        # symmetry break: never open more than one fresh color at a time
        top = max(col) + 1
        for x in range(min(c, top + 1)):
            if x not in used:
                col[u] = x
                if extend(k + 1):
                    return True
        col[u] = -1
        return False

    return list(col) if extend(0) else None


def is_colorable(config: Configuration, c: int) -> bool:
    return find_coloring(config, c) is not None


def distance3_coloring(config: Configuration) -> list[int]:
    """Greedy coloring of the cube graph: nodes within distance 3 differ."""
    color = [-1] * config.n
    for u in range(config.n):
        taken = {color[v] for v in bfs_distances(config, u, limit=3) if v != u}
        x = 0
        while x in taken:
            x += 1
        color[u] = x
    return color


def is_distance3_coloring(config: Configuration, color: Sequence[int]) -> bool:
    for u in range(config.n):
        for v, d in bfs_distances(config, u, limit=3).items():
            if v != u and color[u] == color[v]:
                return False
    return True


# -- triangles ----------------------------------------------------------------

def count_triangles(config: Configuration) -> int:
    total = 0
    for u, v in config.edges():
        total += len(config.adjacency[u] & config.adjacency[v])
    return total // 3


def count_triangles_brute(config: Configuration) -> int:
    adj = config.adjacency
    return sum(1 for a, b, c in itertools.combinations(range(config.n), 3)
               if b in adj[a] and c in adj[a] and c in adj[b])


# -- generators ---------------------------------------------------------------

def _spanning_edges(nodes: Sequence[int], classes: Sequence[int] | None, rng: random.Random) -> set:
    """Random spanning tree; with ``classes`` every tree edge joins distinct classes."""
    order = list(nodes)
    rng.shuffle(order)
    if classes is not None:
        for k in range(1, len(order)):
            if classes[order[k]] != classes[order[0]]:
                order[1], order[k] = order[k], order[1]
                break
    edges = set()
    for k in range(1, len(order)):
        u = order[k]
        if classes is None:
            choices = order[:k]
        else:
            choices = [v for v in order[:k] if classes[v] != classes[u]]
        v = rng.choice(choices)
        edges.add((min(u, v), max(u, v)))
    return edges


def gen_planted_colorable(n: int, c: int, edge_prob: float, rng: random.Random,
                          name: str = "") -> tuple[Configuration, list[int]]:
    """Connected graph with a planted proper c-coloring (returned as witness)."""
    if n < 2 or c < 2:
        raise ValueError("need n >= 2 and c >= 2")
    perm = list(range(n))
    rng.shuffle(perm)
    col = [0] * n
    for pos, u in enumerate(perm):
        col[u] = pos % c
    edges = _spanning_edges(range(n), col, rng)
    for u in range(n):
        for v in range(u + 1, n):
            if col[u] != col[v] and rng.random() < edge_prob:
                edges.add((u, v))
    config = Configuration.from_edges(n, sorted(edges), name=name or f"planted(n={n},c={c})")
    return config, col


def complete_graph(k: int) -> Configuration:
    return Configuration.from_edges(k, itertools.combinations(range(k), 2), name=f"K{k}")


def cycle_graph(k: int) -> Configuration:
    return Configuration.from_edges(k, [(i, (i + 1) % k) for i in range(k)], name=f"C{k}")


def path_graph(k: int) -> Configuration:
    return Configuration.from_edges(k, [(i, i + 1) for i in range(k - 1)], name=f"P{k}")


def star_graph(leaves: int) -> Configuration:
    return Configuration.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)],
                                    name=f"K1,{leaves}")


def complete_multipartite(sizes: Sequence[int]) -> tuple[Configuration, list[int]]:
    col = [k for k, s in enumerate(sizes) for _ in range(s)]
    n = len(col)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if col[u] != col[v]]
    name = "K" + ",".join(map(str, sizes))
    return Configuration.from_edges(n, edges, name=name), col


def gen_non_colorable(kind: str, k: int) -> Configuration:
    """``clique`` k -> K_k (not (k-1)-colorable); ``odd_cycle`` k -> C_k (not 2-colorable)."""
    if kind == "clique":
        return complete_graph(k)
    if kind == "odd_cycle":
        if k % 2 == 0 or k < 3:
            raise ValueError("odd_cycle needs odd k >= 3")
        return cycle_graph(k)
    raise ValueError(f"unknown kind {kind!r}")


def gen_triangle_free(kind: str, n: int, rng: random.Random, edge_prob: float = 0.5) -> Configuration:
    if n < 3 and kind != "bipartite":
        raise ValueError("need n >= 3")
    if kind == "bipartite":
        config, _ = gen_planted_colorable(n, 2, edge_prob, rng, name=f"bipartite(n={n})")
        return config
    if kind == "cycle5":
        return cycle_graph(5)
    if kind == "cycle":
        if n < 4:
            raise ValueError("triangle-free cycle needs n >= 4")
        return cycle_graph(n)
    if kind == "star":
        return star_graph(n - 1)
    raise ValueError(f"unknown kind {kind!r}")


def gen_with_triangle(n: int, rng: random.Random, edge_prob: float = 0.3) -> Configuration:
    """Random connected graph with at least one forced triangle."""
    if n < 3:
        raise ValueError("need n >= 3")
    edges = _spanning_edges(range(n), None, rng)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.add((u, v))
    a, b, c = sorted(rng.sample(range(n), 3))
    edges |= {(a, b), (a, c), (b, c)}
    return Configuration.from_edges(n, sorted(edges), name=f"with_triangle(n={n})")


def gen_bounded_degree(n: int, max_deg: int, rng: random.Random, extra_edges: int | None = None) -> Configuration:
    """Connected graph with maximum degree ``max_deg`` (>= 2) built from a random path."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    attempts = extra_edges if extra_edges is not None else 2 * n
    for _ in range(attempts):
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e not in edges and deg[u] < max_deg and deg[v] < max_deg:
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
    return Configuration.from_edges(n, sorted(edges), name=f"bounded(n={n},D={max_deg})")


# -- file format --------------------------------------------------------------

def dumps_graph(config: Configuration) -> str:
    lines = [f"n={config.n}"]
    if config.ids != tuple(range(1, config.n + 1)):
        lines.append("ids=" + " ".join(map(str, config.ids)))
    for u in range(config.n):
        lines.append(f"{u}: " + " ".join(str(v) for v in sorted(config.adjacency[u])))
    return "\n".join(lines) + "\n"


def loads_graph(text: str, name: str = "") -> Configuration:
    n = None
    ids = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            n = int(line[2:])
        elif line.startswith("ids="):
            ids = [int(x) for x in line[4:].split()]
        else:
            head, _, rest = line.partition(":")
            if not _:
                raise ConfigurationError(f"malformed adjacency line {raw!r}")
            u = int(head)
            edges.extend((u, int(v)) for v in rest.split())
    if n is None:
        raise ConfigurationError("missing 'n=<int>' header")
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ConfigurationError(f"edge {u}-{v} out of range for n={n}")
    return Configuration.from_edges(n, edges, ids=ids, name=name)


def write_graph(config: Configuration, path: str | Path) -> None:
    Path(path).write_text(dumps_graph(config))


def read_graph(path: str | Path) -> Configuration:
    path = Path(path)
    return loads_graph(path.read_text(), name=path.stem)
