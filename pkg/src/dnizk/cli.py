"""Command-line front end: run protocols, distribution tests, parameter sweeps, graph generation.

Exit codes: 0 on success, 2 on an invalid experiment spec, 1 on an internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction

import numpy as np

from . import coloring as col_mod
from . import triangle as tri_mod
from . import universal as uni_mod
from .engine import Garbage, acceptance_frequency, exact_soundness, node_states, run
from .errors import DnizkError
from .graph import (Configuration, complete_graph, complete_multipartite, count_triangles, cycle_graph,
                    dumps_graph, find_coloring, gen_bounded_degree, gen_planted_colorable, gen_triangle_free,
                    gen_with_triangle, path_graph, read_graph, star_graph)
from .rand import RandomStream
from .universal.protocol import adjacency_bits
from .zkstats import (chi2_homogeneity, column_ranges, projection_width, tv_distance, tv_noise_floor,
                      uniformity_report)

RUN_SCHEMA = "dnizk.run-report/1"
ZK_SCHEMA = "dnizk.zk-report/1"
SWEEP_SCHEMA = "dnizk.sweep/1"
SPEC_SCHEMA = "dnizk.spec/1"

PROTOCOLS = ("coloring", "triangle", "universal")
GRAPH_KINDS = ("planted", "bipartite", "multipartite", "complete", "cycle", "path", "star",
               "with-triangle", "bounded-degree", "file")
STRATEGIES = {
    "coloring": ("honest", "wrong-witness", "zero-forcing", "max-roots", "garbage"),
    "triangle": ("honest", "dishonest", "zero-forcing", "max-roots", "garbage"),
    "universal": ("honest", "inconsistent", "missing-edge", "forged-proof", "tampered-opening"),
}
SWEEP_AXES = ("n", "colors", "soundness", "alpha", "equality_t")

P_THRESHOLD = 1e-3
TV_THRESHOLD = 0.01


class SpecError(ValueError):
    """Invalid experiment spec (exit code 2)."""


@dataclass
class ExperimentSpec:
    protocol: str = "coloring"
    graph: str = "planted"
    n: int = 8
    graph_seed: int = 0
    graph_file: str | None = None
    edge_prob: float = 0.5
    max_degree: int = 3
    colors: int = 3
    soundness: str | None = None
    q: int | None = None
    private_randomness: bool = False
    alpha: int = 3
    id_mode: str = "ids"
    improved_soundness: bool = False
    equality_t: int | None = None
    strategy: str = "honest"
    trials: int = 100
    seed: int = 0
    exact: bool = False
    node: int = 0
    coalition: int = 2
    grid: dict = field(default_factory=dict)
    out: str | None = None
    format: str | None = None

    def validate(self) -> "ExperimentSpec":
        if self.protocol not in PROTOCOLS:
            raise SpecError(f"unknown protocol {self.protocol!r}")
        if self.graph not in GRAPH_KINDS:
            raise SpecError(f"unknown graph kind {self.graph!r}")
        if self.graph == "file" and not self.graph_file:
            raise SpecError("graph kind 'file' needs --graph-file")
        if self.n < 2:
            raise SpecError("n must be at least 2")
        if self.trials < 1:
            raise SpecError("trials must be positive")
        if self.colors < 2:
            raise SpecError("need at least 2 colors")
        if self.alpha < 1:
            raise SpecError("alpha must be positive")
        if not 0 < self.edge_prob <= 1:
            raise SpecError("edge probability must lie in (0, 1]")
        if self.soundness is not None:
            try:
                s = Fraction(self.soundness)
            except (ValueError, ZeroDivisionError) as exc:
                raise SpecError(f"bad soundness {self.soundness!r}") from exc
            if not 0 < s < 1:
                raise SpecError("soundness must lie in (0, 1)")
        if self.id_mode not in tri_mod.ID_MODES:
            raise SpecError(f"unknown id mode {self.id_mode!r}")
        if self.strategy not in STRATEGIES[self.protocol]:
            raise SpecError(f"strategy {self.strategy!r} not available for {self.protocol}")
        if self.equality_t is not None and self.equality_t < 1:
            raise SpecError("equality t must be positive")
        if self.coalition < 1:
            raise SpecError("coalition size must be positive")
        if self.format not in (None, "json", "csv"):
            raise SpecError(f"unknown format {self.format!r}")
        for axis, values in self.grid.items():
            if axis not in SWEEP_AXES:
                raise SpecError(f"cannot sweep over {axis!r}")
            if not isinstance(values, list) or not values:
                raise SpecError(f"sweep axis {axis!r} needs a non-empty list")
        return self

    def to_dict(self) -> dict:
        return {"schema": SPEC_SCHEMA, **asdict(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        data = dict(data)
        schema = data.pop("schema", SPEC_SCHEMA)
        if schema != SPEC_SCHEMA:
            raise SpecError(f"unsupported spec schema {schema!r}")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"unknown spec fields: {sorted(unknown)}")
        return cls(**data)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ExperimentSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise SpecError("spec must be a JSON object")
        return cls.from_dict(data)


# -- resolution -----------------------------------------------------------------

def build_graph(spec: ExperimentSpec) -> tuple[Configuration, list[int] | None]:
    """Graph plus a planted witness coloring when the generator provides one."""
    rng = RandomStream(spec.graph_seed, b"graph")
    kind, n = spec.graph, spec.n
    if kind == "planted":
        return gen_planted_colorable(n, spec.colors, spec.edge_prob, rng)
    if kind == "bipartite":
        return gen_triangle_free("bipartite", n, rng, spec.edge_prob), None
    if kind == "multipartite":
        if n % spec.colors:
            raise SpecError("multipartite needs n divisible by the number of colors")
        return complete_multipartite([n // spec.colors] * spec.colors)
    if kind == "complete":
        return complete_graph(n), None
    if kind == "cycle":
        return cycle_graph(n), None
    if kind == "path":
        return path_graph(n), None
    if kind == "star":
        return star_graph(n - 1), None
    if kind == "with-triangle":
        return gen_with_triangle(n, rng, spec.edge_prob if spec.edge_prob < 1 else 0.3), None
    if kind == "bounded-degree":
        return gen_bounded_degree(n, spec.max_degree, rng), None
    try:
        return read_graph(spec.graph_file), None
    except OSError as exc:
        raise SpecError(f"cannot read graph file: {exc}") from exc


def _best_effort_coloring(config: Configuration, c: int) -> list[int]:
    found = find_coloring(config, c)
    if found is not None:
        return found
    col = [0] * config.n
    for u in range(config.n):
        used = {col[v] for v in config.adjacency[u] if v < u}
        col[u] = next((x for x in range(c) if x not in used), 0)
    return col


def build_protocol(spec: ExperimentSpec, config: Configuration):
    s = None if spec.soundness is None else Fraction(spec.soundness)
    if spec.protocol == "coloring":
        mode = "private" if spec.private_randomness else "shared"
        return col_mod.ColoringProtocol.for_config(config, spec.colors, s, spec.q, mode)
    if spec.protocol == "triangle":
        return tri_mod.TriangleProtocol.for_config(config, spec.alpha, spec.q, spec.id_mode, spec.improved_soundness)
    return uni_mod.UniversalProtocol(config.n, spec.equality_t, seed=spec.seed)


def build_strategy(spec: ExperimentSpec, config: Configuration, witness):
    name = spec.strategy
    if spec.protocol == "coloring":
        w = witness if witness is not None else _best_effort_coloring(config, spec.colors)
        table = {"honest": col_mod.HonestColoring, "wrong-witness": col_mod.WrongWitness,
                 "zero-forcing": col_mod.ZeroForcing, "max-roots": col_mod.MaxRoots}
        if name == "garbage":
            return Garbage(col_mod.WrongWitness(w), victims=[0])
        return table[name](w)
    if spec.protocol == "triangle":
        table = {"honest": tri_mod.HonestTriangle, "dishonest": tri_mod.TriangleAlgebra,
                 "zero-forcing": tri_mod.ZeroForcing, "max-roots": tri_mod.MaxRoots}
        if name == "garbage":
            return Garbage(tri_mod.TriangleAlgebra(), victims=[0])
        return table[name]()
    table = {"honest": lambda: uni_mod.HonestUniversal(witness),
             "inconsistent": lambda: uni_mod.InconsistentMatrices(witness=witness),
             "missing-edge": lambda: uni_mod.MissingEdge(witness=witness),
             "forged-proof": uni_mod.ForgedProof,
             "tampered-opening": lambda: uni_mod.TamperedOpening(witness=witness)}
    return table[name]()


def resolve(spec: ExperimentSpec):
    """Validate and build (config, witness, protocol, strategy); any failure is a spec error."""
    spec.validate()
    try:
        config, witness = build_graph(spec)
        if spec.protocol == "triangle" and spec.id_mode == "dist3colors":
            config = config.as_kt0()
        protocol = build_protocol(spec, config)
        protocol.check_config(config)
        strategy = build_strategy(spec, config, witness)
    except SpecError:
        raise
    except (DnizkError, ValueError) as exc:
        raise SpecError(str(exc)) from exc
    return config, witness, protocol, strategy


def graph_summary(config: Configuration) -> dict:
    return {"name": config.name, "n": config.n, "m": len(config.edges()), "max_degree": config.max_degree,
            "kt0": config.kt0, "triangles": count_triangles(config)}


def _bound(protocol):
    params = getattr(protocol, "params", None)
    if params is None:
        return None
    b = params.soundness_bound()
    return {"fraction": str(b), "float": float(b)}


# -- commands -------------------------------------------------------------------

def cmd_run(spec: ExperimentSpec) -> dict:
    config, _, protocol, strategy = resolve(spec)
    first = run(config, protocol, strategy, spec.seed, prover_seed=spec.seed, record_views=False)
    freq = acceptance_frequency(config, protocol, strategy, spec.trials, spec.seed, prover_seed=spec.seed)
    report = {
        "schema": RUN_SCHEMA,
        "spec": spec.to_dict(),
        "graph": graph_summary(config),
        "params": protocol.describe(),
        "strategy": strategy.describe(),
        "seeds": {"seed": spec.seed, "prover_seed": spec.seed, "graph_seed": spec.graph_seed,
                  "trial_seeds": "derive_seed(seed, k) for k < trials"},
        "in_language": protocol.in_language(config),
        "first_run": {"verdicts": list(first.verdicts), "accepted": first.accepted, "r": first.r},
        "trials": spec.trials,
        "acceptance_frequency": freq,
        "sizes": {"unit": protocol.unit, "cert_max": max(first.cert_sizes), "cert_bound": protocol.cert_bound(),
                  "edge_max": max(first.edge_sizes.values(), default=0),
                  "edge_bound": protocol.message_bound()},
        "soundness_bound": _bound(protocol),
        "exact": None,
    }
    if spec.protocol == "triangle" and config.kt0:
        certs = strategy.certify(config, protocol, RandomStream(spec.seed, b"prover"))
        report["sizes"]["bundle_bits_max"] = max(protocol.bundle_bits(c) for c in certs)
    if spec.exact:
        if spec.protocol == "universal":
            if isinstance(strategy, uni_mod.InconsistentMatrices):
                p = strategy.exact_acceptance(protocol)
                report["exact"] = {"kind": "equality-miss", "probability": str(p), "probability_float": float(p),
                                   "bound": 2.0 ** -protocol.t}
            else:
                report["exact"] = {"kind": "not-enumerable"}
        else:
            report["exact"] = exact_soundness(config, protocol, strategy, prover_seed=spec.seed).to_dict()
    return report


VERIFY_CAP = 100_000


def _head(samples: dict, k: int) -> dict:
    return {c: v[:k] for c, v in samples.items()}


def _zk_polynomial(spec: ExperimentSpec, config, witness, protocol) -> dict:
    size = spec.trials
    node = spec.node
    if not 0 <= node < config.n:
        raise SpecError(f"node {node} outside the graph")
    state = node_states(config)[node]
    real_rng = np.random.default_rng([spec.seed, 0])
    sim_rng = np.random.default_rng([spec.seed, 1])
    params = protocol.params
    if spec.protocol == "coloring":
        if params.challenge_mode != "shared":
            raise SpecError("distribution tests cover the shared-challenge mode")
        if witness is None:
            witness = find_coloring(config, params.c)
            if witness is None:
                raise SpecError("graph is not colorable; nothing to simulate")
        real = col_mod.sample_real_views(config, witness, node, params, size, real_rng)
        sim = col_mod.sample_simulated_views(state.degree, params, size, sim_rng)
        views = col_mod.views_from_samples(_head(sim, VERIFY_CAP), state, params)
        violations = sum(not col_mod.verify_view(v, params) for v in views)
        ranges = column_ranges(list(sim), params.q, params.c, params.c)
        projections = col_mod.received_projections(state.degree, params.c, projection_width(params.q))
    else:
        if params.id_mode != "ids":
            raise SpecError("distribution tests cover the ID mode")
        if count_triangles(config):
            raise SpecError("graph has a triangle; nothing to simulate")
        real = tri_mod.sample_real_views(config, node, params, size, real_rng)
        sim = tri_mod.sample_simulated_views(state, params, size, sim_rng)
        views = tri_mod.views_from_samples(_head(sim, VERIFY_CAP), state, params)
        violations = sum(not tri_mod.verify_view(v, params) for v in views)
        ranges = column_ranges(list(sim), params.q, params.B)
        projections = tri_mod.received_projections(state.degree, params, projection_width(params.q))
    uni_real = uniformity_report(real, ranges)
    uni_sim = uniformity_report(sim, ranges)
    tvs = [{"columns": p, "tv": tv_distance(real, sim, p, params.q),
            "noise_floor": tv_noise_floor(params.q ** len(p), size)} for p in projections]
    homog = [chi2_homogeneity(real, sim, p, params.q) for p in projections]
    checks = {
        "constraint_violations": violations == 0,
        "uniformity_real": all(r.p_value > P_THRESHOLD for r in uni_real),
        "uniformity_simulated": all(r.p_value > P_THRESHOLD for r in uni_sim),
        "tv": all(t["tv"] <= TV_THRESHOLD for t in tvs),
        "homogeneity": all(h.p_value > P_THRESHOLD for h in homog),
    }
    return {
        "node": node, "degree": state.degree, "samples": size, "views_verified": len(views),
        "violations": violations,
        "uniformity": {"real": [asdict(r) for r in uni_real], "simulated": [asdict(r) for r in uni_sim]},
        "tv": tvs, "homogeneity": [asdict(h) for h in homog],
        "thresholds": {"p_value": P_THRESHOLD, "tv": TV_THRESHOLD}, "checks": checks,
    }


def universal_coalition_check(config: Configuration, protocol, coalition: list[int], seed: int) -> dict:
    """Simulate the coalition's views and check verification, ground truth and the oracle log."""
    states = node_states(config)
    views = uni_mod.simulate_universal_views([states[u] for u in coalition], protocol, RandomStream(seed, b"sim"))
    bits = adjacency_bits(config)
    n = config.n
    verified, truthful = True, True
    for u in coalition:
        view = views[config.ids[u]]
        outcome = uni_mod.verify_view(view, protocol)
        verified &= all(outcome.values())
        k = config.ids[u] - 1
        truthful &= all(view.sigma.row[j].bit == bits[k][j] and view.sigma.col[j].bit == bits[j][k]
                        for j in range(n))
    leaks = uni_mod.leaked_edges(protocol.oracle, config, coalition)
    return {"coalition": [config.ids[u] for u in coalition], "verified": bool(verified),
            "ground_truth": bool(truthful), "leaked_edges": [list(e) for e in leaks]}


def cmd_zk_test(spec: ExperimentSpec) -> dict:
    config, witness, protocol, _ = resolve(spec)
    report = {"schema": ZK_SCHEMA, "spec": spec.to_dict(), "graph": graph_summary(config),
              "params": protocol.describe(), "seed": spec.seed}
    if spec.protocol == "universal":
        if spec.coalition > config.n:
            raise SpecError("coalition larger than the graph")
        members = RandomStream(spec.seed, b"coalition").sample(range(config.n), spec.coalition)
        fresh = uni_mod.UniversalProtocol(config.n, spec.equality_t, seed=spec.seed)
        res = universal_coalition_check(config, fresh, sorted(members), spec.seed)
        res["checks"] = {"verified": res["verified"], "ground_truth": res["ground_truth"],
                         "query_log_clean": not res["leaked_edges"]}
        report.update(res)
    else:
        report.update(_zk_polynomial(spec, config, witness, protocol))
    report["passed"] = all(report["checks"].values())
    return report


def sweep_cells(spec: ExperimentSpec) -> list[ExperimentSpec]:
    cells = [spec]
    for axis in SWEEP_AXES:
        if axis in spec.grid:
            cells = [replace(c, **{axis: v}) for c in cells for v in spec.grid[axis]]
    return [replace(c, grid={}) for c in cells]


SWEEP_COLUMNS = ["schema", "protocol", "graph", "n", "colors", "soundness", "alpha", "equality_t", "q", "B",
                 "alpha_eff", "t", "seed", "trials", "honest_acceptance", "cert_size", "cert_bound",
                 "edge_size", "edge_bound", "unit", "exact_strategy", "exact_probability", "soundness_bound"]


def sweep_row(cell: ExperimentSpec) -> dict:
    honest = replace(cell, strategy="honest")
    config, _, protocol, strategy = resolve(honest)
    params = protocol.describe()
    res = run(config, protocol, strategy, cell.seed, record_views=False)
    freq = acceptance_frequency(config, protocol, strategy, cell.trials, cell.seed, prover_seed=cell.seed)
    row = {"schema": SWEEP_SCHEMA, "protocol": cell.protocol, "graph": config.name, "n": config.n,
           "colors": cell.colors if cell.protocol == "coloring" else "",
           "soundness": cell.soundness or "", "alpha": cell.alpha if cell.protocol == "triangle" else "",
           "equality_t": params.get("t", ""), "q": params.get("q", ""), "B": params.get("B", ""),
           "alpha_eff": params.get("alpha_eff", ""), "t": params.get("t", ""), "seed": cell.seed,
           "trials": cell.trials, "honest_acceptance": freq, "cert_size": max(res.cert_sizes),
           "cert_bound": protocol.cert_bound(), "edge_size": max(res.edge_sizes.values(), default=0),
           "edge_bound": protocol.message_bound(), "unit": protocol.unit,
           "exact_strategy": "", "exact_probability": "", "soundness_bound": ""}
    if cell.exact and cell.protocol != "universal":
        # zero-forcing on a fixed negative instance under the cell's parameters
        if cell.protocol == "coloring":
            bad = complete_graph(cell.colors + 1)
            w = _best_effort_coloring(bad, cell.colors)
            params = protocol.params
            p = col_mod.ColoringProtocol(replace(params, n=max(params.n, bad.n)))
            ex = exact_soundness(bad, p, col_mod.ZeroForcing(w), prover_seed=cell.seed)
        else:
            bad = complete_graph(3)
            params = protocol.params
            if params.n < 3:
                params = tri_mod.TriangleParams.build(3, params.alpha, improved=params.improved)
            p = tri_mod.TriangleProtocol(params)
            ex = exact_soundness(bad, p, tri_mod.ZeroForcing(), prover_seed=cell.seed)
        row.update(exact_strategy=f"zero-forcing@{bad.name}", exact_probability=str(ex.probability),
                   soundness_bound=str(p.params.soundness_bound()))
    return row


def _workers(cells: int) -> int:
    cap = os.environ.get("DNIZK_THREADS")
    try:
        limit = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError as exc:
        raise SpecError("DNIZK_THREADS must be an integer") from exc
    return max(1, min(limit, cells))


def cmd_sweep(spec: ExperimentSpec) -> list[dict]:
    spec.validate()
    cells = sweep_cells(spec)
    for c in cells:
        resolve(c)
    workers = _workers(len(cells))
    if workers == 1:
        return [sweep_row(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_row, cells))


# -- output ---------------------------------------------------------------------

def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2, sort_keys=True) + "\n"
    rows = result if isinstance(result, list) else [_flatten(result)]
    columns = SWEEP_COLUMNS if isinstance(result, list) else sorted(rows[0])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument parsing -------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _str_list(text: str) -> list[str]:
    return [x for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dnizk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="experiment spec (JSON); explicit flags override it")
    common.add_argument("--write-spec", help="write the resolved spec to this path")
    common.add_argument("--protocol", choices=PROTOCOLS)
    common.add_argument("--graph", choices=GRAPH_KINDS)
    common.add_argument("--graph-file")
    common.add_argument("--graph-seed", type=int)
    common.add_argument("--edge-prob", type=float)
    common.add_argument("--max-degree", type=int)
    common.add_argument("--q", type=int, help="override the field modulus")
    common.add_argument("--private-randomness", action="store_true", default=None)
    common.add_argument("--id-mode", choices=tri_mod.ID_MODES)
    common.add_argument("--improved-soundness", action="store_true", default=None)
    common.add_argument("--strategy")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--exact", action="store_true", default=None)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"))

    scalar = argparse.ArgumentParser(add_help=False)
    scalar.add_argument("--n", type=int)
    scalar.add_argument("--alpha", type=int)
    scalar.add_argument("--colors", type=int)
    scalar.add_argument("--soundness", help="target soundness, e.g. 1/16")
    scalar.add_argument("--equality-t", type=int)

    p_run = sub.add_parser("run", parents=[common, scalar], help="run a protocol and report acceptance")
    p_run.set_defaults(func=cmd_run, default_format="json")

    p_zk = sub.add_parser("zk-test", parents=[common, scalar], help="compare real and simulated views")
    p_zk.add_argument("--node", type=int)
    p_zk.add_argument("--coalition", type=int, help="coalition size (universal protocol)")
    p_zk.set_defaults(func=cmd_zk_test, default_format="json")

    p_sweep = sub.add_parser("sweep", parents=[common], help="grid over parameters, one CSV row per cell")
    p_sweep.add_argument("--n", type=_int_list)
    p_sweep.add_argument("--alpha", type=_int_list)
    p_sweep.add_argument("--colors", type=_int_list)
    p_sweep.add_argument("--soundness", type=_str_list)
    p_sweep.add_argument("--equality-t", type=_int_list)
    p_sweep.set_defaults(func=cmd_sweep, default_format="csv")

    p_gen = sub.add_parser("gen-graph", help="write a generated graph to a file")
    p_gen.add_argument("--graph", choices=[k for k in GRAPH_KINDS if k != "file"], default="planted")
    p_gen.add_argument("--n", type=int, default=8)
    p_gen.add_argument("--colors", type=int, default=3)
    p_gen.add_argument("--edge-prob", type=float, default=0.5)
    p_gen.add_argument("--max-degree", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=None)
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                spec = ExperimentSpec.loads(fh.read())
        except OSError as exc:
            raise SpecError(f"cannot read spec: {exc}") from exc
    else:
        spec = ExperimentSpec()
    updates = {}
    for f in fields(ExperimentSpec):
        value = getattr(args, f.name, None)
        if value is None:
            continue
        if args.command == "sweep" and f.name in SWEEP_AXES:
            if len(value) == 1:
                updates[f.name] = value[0]
            else:
                spec.grid = {**spec.grid, f.name: value}
        else:
            updates[f.name] = value
    if updates.get("graph_file") and "graph" not in updates:
        updates["graph"] = "file"
    return replace(spec, **updates)


def _gen_graph(args) -> int:
    spec = ExperimentSpec(graph=args.graph, n=args.n, colors=args.colors, edge_prob=args.edge_prob,
                          max_degree=args.max_degree, graph_seed=args.seed).validate()
    config, _ = build_graph(spec)
    emit(dumps_graph(config), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen-graph":
            return _gen_graph(args)
        spec = spec_from_args(args).validate()
        if args.write_spec:
            with open(args.write_spec, "w", encoding="utf-8") as fh:
                fh.write(spec.dumps())
        result = args.func(spec)
        emit(render(result, spec.format or args.default_format), spec.out)
    except SpecError as exc:
        print(f"dnizk: invalid spec: {exc}", file=sys.stderr)
        return 2
    except (DnizkError, ValueError, ArithmeticError, OSError) as exc:
        print(f"dnizk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
