import json

import pytest

from dnizk.coloring import ColoringProtocol, HonestColoring, WrongWitness, ZeroForcing
from dnizk.engine import (Garbage, Protocol, ProverStrategy, certify, execute, exact_soundness, run,
                          soundness_trial)
from dnizk.errors import MessageSizeViolation, NotEnumerable, PositiveInstanceSupplied, ProtocolParameterMismatch
from dnizk.graph import complete_graph, cycle_graph, path_graph
from dnizk.triangle import TriangleProtocol, ZeroForcing as TriZeroForcing
from dnizk.universal import HonestUniversal, UniversalProtocol


def k2():
    return complete_graph(2)


def test_honest_k2_accepts():
    res = run(k2(), ColoringProtocol.for_config(k2()), HonestColoring([0, 1]), seed=1)
    assert res.accepted and res.rounds == 1


def test_garbage_certificate_rejects_locally():
    g = cycle_graph(4)
    res = run(g, ColoringProtocol.for_config(g), Garbage(HonestColoring([0, 1, 0, 1]), victims=[2]), seed=3)
    assert res.verdicts[2] is False
    assert res.cert_sizes[2] == -1


def test_run_is_deterministic_to_the_byte():
    g = cycle_graph(6)
    p = ColoringProtocol.for_config(g)
    a = run(g, p, HonestColoring([0, 1] * 3), seed=9).to_json(include_views=True)
    b = run(g, p, HonestColoring([0, 1] * 3), seed=9).to_json(include_views=True)
    assert a == b
    assert json.loads(a)["schema"].startswith("dnizk.run")


def test_certificates_do_not_depend_on_shared_seed():
    g = cycle_graph(5)
    p = ColoringProtocol.for_config(g)
    w = [0, 1, 0, 1, 2]
    a = run(g, p, HonestColoring(w), seed=1, prover_seed=4)
    b = run(g, p, HonestColoring(w), seed=2, prover_seed=4)
    assert [v.sigma for v in a.views] == [v.sigma for v in b.views]


class _Recorder(ProverStrategy):
    """Checks that certification happens before any shared randomness object exists."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = []

    def certify(self, config, protocol, rng):
        import dnizk.rand as R
        original = R.SharedRandomness.__init__
        created = []

        def spy(self_, *a, **k):
            created.append(1)
            original(self_, *a, **k)

        R.SharedRandomness.__init__ = spy
        try:
            out = self.inner.certify(config, protocol, rng)
        finally:
            R.SharedRandomness.__init__ = original
        self.calls.append(len(created))
        return out


def test_prover_runs_before_shared_randomness():
    g = path_graph(3)
    rec = _Recorder(HonestColoring([0, 1, 0]))
    run(g, ColoringProtocol.for_config(g), rec, seed=0)
    assert rec.calls == [0]


def test_views_hold_port_ordered_messages():
    g = path_graph(3)
    res = run(g, ColoringProtocol.for_config(g), HonestColoring([0, 1, 0]), seed=5)
    mid = res.views[1]
    assert mid.state.neighbor_ids == (1, 3)
    assert len(mid.gamma) == 2 and mid.r == {"i*": res.r["i*"]}


def test_soundness_trial_refuses_positive_instances():
    g = cycle_graph(4)
    with pytest.raises(PositiveInstanceSupplied):
        soundness_trial(g, ColoringProtocol.for_config(g), WrongWitness([0, 0, 0, 0]), 10, seed=0)


def test_wrong_witness_on_k4_always_rejected():
    g = complete_graph(4)
    p = ColoringProtocol.for_config(g)
    assert soundness_trial(g, p, WrongWitness([0, 1, 2, 0]), 200, seed=1) == 0.0


def test_exact_soundness_honest_is_one():
    g = cycle_graph(4)
    ex = exact_soundness(g, ColoringProtocol.for_config(g), HonestColoring([0, 1, 0, 1]))
    assert ex.probability == 1 and ex.accepting == ex.admissible


def test_exact_soundness_bounds_cheats():
    k4 = complete_graph(4)
    p = ColoringProtocol.for_config(k4, q=11)
    assert exact_soundness(k4, p, ZeroForcing([0, 1, 2, 0])).accepting <= 6
    k3 = complete_graph(3)
    tp = TriangleProtocol.for_config(k3)
    assert exact_soundness(k3, tp, TriZeroForcing()).accepting <= 2 * tp.params.B


def test_exact_soundness_not_enumerable_for_universal():
    g = cycle_graph(4)
    with pytest.raises(NotEnumerable):
        exact_soundness(g, UniversalProtocol(4), HonestUniversal([0, 1, 0, 1]))


def test_parameter_mismatch():
    with pytest.raises(ProtocolParameterMismatch):
        run(cycle_graph(8), ColoringProtocol.for_config(cycle_graph(4)), HonestColoring([0, 1] * 4), seed=0)


class _Oversized(Protocol):
    """Sends one more element than it declares."""

    name = "oversized"

    def check_config(self, config):
        pass

    def in_language(self, config):
        return True

    def send(self, state, cert, rand, round_no, inbox):
        return (1, 2)

    def decide(self, state, cert, rand, gamma):
        return True

    def cert_size(self, cert):
        return 1

    def message_size(self, msg):
        return len(msg)

    def message_bound(self):
        return 1


class _Trivial(ProverStrategy):
    honest = True

    def certify(self, config, protocol, rng):
        return [0] * config.n


def test_honest_size_violation_is_an_engine_error():
    with pytest.raises(MessageSizeViolation):
        run(k2(), _Oversized(), _Trivial(), seed=0)
    # adversarial runs are not policed
    certs = certify(k2(), _Oversized(), _Trivial(), 0)
    assert execute(k2(), _Oversized(), certs, 0, honest=False).accepted
