import csv
import io
import json
import subprocess
import sys

import pytest

from dnizk.cli import ExperimentSpec, SpecError, main, sweep_cells
from dnizk.graph import read_graph


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_report(capsys):
    code, out, _ = _run(capsys, "run", "--protocol", "coloring", "--graph", "planted", "--n", "12",
                        "--trials", "20", "--seed", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "dnizk.run-report/1"
    assert rep["acceptance_frequency"] == 1.0
    assert rep["sizes"]["cert_max"] == rep["sizes"]["cert_bound"] == 16


def test_run_exact_soundness(capsys):
    code, out, _ = _run(capsys, "run", "--protocol", "coloring", "--graph", "complete", "--n", "4",
                        "--strategy", "zero-forcing", "--q", "11", "--exact", "--trials", "10")
    rep = json.loads(out)
    assert code == 0 and rep["exact"]["accepting"] <= 6 and rep["exact"]["admissible"] == 8


def test_reports_are_byte_identical(capsys):
    args = ["run", "--protocol", "triangle", "--graph", "bipartite", "--n", "10", "--trials", "5", "--seed", "2"]
    _, a, _ = _run(capsys, *args)
    _, b, _ = _run(capsys, *args)
    assert a == b


def test_spec_round_trip(tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    code, first, _ = _run(capsys, "run", "--protocol", "universal", "--graph", "planted", "--n", "6",
                          "--trials", "3", "--write-spec", str(spec_path))
    assert code == 0
    spec = ExperimentSpec.loads(spec_path.read_text())
    assert spec.protocol == "universal" and spec.n == 6
    assert ExperimentSpec.loads(spec.dumps()) == spec
    code, second, _ = _run(capsys, "run", "--spec", str(spec_path))
    assert code == 0 and second == first


def test_flags_override_spec(tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(ExperimentSpec(n=6, trials=2).dumps())
    _, out, _ = _run(capsys, "run", "--spec", str(spec_path), "--n", "9")
    assert json.loads(out)["graph"]["n"] == 9


@pytest.mark.parametrize("argv", [
    ["run", "--protocol", "coloring", "--strategy", "inconsistent"],
    ["run", "--n", "1"],
    ["run", "--soundness", "2"],
    ["run", "--graph", "file"],
    ["run", "--protocol", "triangle", "--graph", "cycle", "--n", "8", "--q", "13"],
])
def test_invalid_specs_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and "invalid spec" in err


def test_unknown_spec_fields_rejected():
    with pytest.raises(SpecError):
        ExperimentSpec.loads('{"protocol": "coloring", "bogus": 1}')
    with pytest.raises(SpecError):
        ExperimentSpec.loads("[1, 2]")


def test_zk_test_small(capsys):
    code, out, _ = _run(capsys, "zk-test", "--protocol", "coloring", "--graph", "complete", "--n", "2",
                        "--colors", "3", "--trials", "20000", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == "dnizk.zk-report/1"
    assert rep["violations"] == 0 and rep["checks"]["constraint_violations"]
    assert rep["checks"]["uniformity_real"] and rep["checks"]["homogeneity"]


def test_zk_test_universal(capsys):
    code, out, _ = _run(capsys, "zk-test", "--protocol", "universal", "--graph", "planted", "--n", "6",
                        "--coalition", "2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and len(rep["coalition"]) == 2


def test_sweep_csv(capsys, monkeypatch):
    monkeypatch.setenv("DNIZK_THREADS", "1")
    code, out, _ = _run(capsys, "sweep", "--protocol", "coloring", "--graph", "complete", "--n", "2,3",
                        "--colors", "3", "--soundness", "1/16,1/64", "--trials", "3", "--exact")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    for r in rows:
        assert float(r["honest_acceptance"]) == 1.0
        assert eval_fraction(r["exact_probability"]) <= eval_fraction(r["soundness_bound"])


def eval_fraction(text):
    from fractions import Fraction
    return Fraction(text)


def test_sweep_cells_cartesian():
    spec = ExperimentSpec(grid={"n": [4, 5], "alpha": [3, 4]})
    cells = sweep_cells(spec)
    assert [(c.n, c.alpha) for c in cells] == [(4, 3), (4, 4), (5, 3), (5, 4)]


def test_gen_graph_and_file_input(tmp_path, capsys):
    path = tmp_path / "g.txt"
    assert main(["gen-graph", "--graph", "bipartite", "--n", "8", "--seed", "4", "--out", str(path)]) == 0
    g = read_graph(path)
    assert g.n == 8
    code, out, _ = _run(capsys, "run", "--protocol", "triangle", "--graph-file", str(path), "--trials", "3")
    assert code == 0 and json.loads(out)["acceptance_frequency"] == 1.0


def test_missing_graph_file_exit_2(capsys):
    code, _, _ = _run(capsys, "run", "--graph-file", "/nonexistent/graph.txt")
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dnizk.cli", "run", "--n", "4", "--graph", "cycle",
                           "--trials", "2", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("acceptance_frequency")
