import numpy as np
import pytest

from dnizk.zkstats import (chi2_homogeneity, chi2_uniform, column_ranges, projection_width, tv_distance,
                           tv_noise_floor, uniformity_report)


def test_chi2_uniform_accepts_uniform_and_rejects_skew():
    rng = np.random.default_rng(0)
    assert chi2_uniform(rng.integers(0, 5, 50_000), 0, 5).p_value > 1e-3
    skew = np.concatenate([rng.integers(0, 5, 50_000), np.zeros(2000, dtype=np.int64)])
    assert chi2_uniform(skew, 0, 5).p_value < 1e-6


def test_chi2_uniform_range_check():
    with pytest.raises(ValueError):
        chi2_uniform(np.array([0, 5]), 0, 5, "x")


def test_tv_distance_exact_cases():
    a = {"x": np.array([0, 0, 1, 1])}
    b = {"x": np.array([0, 1, 1, 1])}
    assert tv_distance(a, b, ["x"], 2) == pytest.approx(0.25)
    assert tv_distance(a, a, ["x"], 2) == 0.0
    c = {"x": np.array([2, 2, 2, 2])}
    assert tv_distance(a, c, ["x"], 3) == 1.0


def test_tv_joint_sees_dependence_marginals_miss():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 2, 20_000)
    dep = {"x": x, "y": x}
    ind = {"x": rng.integers(0, 2, 20_000), "y": rng.integers(0, 2, 20_000)}
    assert tv_distance(dep, ind, ["x"], 2) < 0.02
    assert tv_distance(dep, ind, ["x", "y"], 2) > 0.45


def test_noise_floor_tracks_estimator_bias():
    rng = np.random.default_rng(2)
    n, cells = 50_000, 125
    a = {"k": rng.integers(0, cells, n)}
    b = {"k": rng.integers(0, cells, n)}
    tv = tv_distance(a, b, ["k"], cells)
    assert 0.5 * tv_noise_floor(cells, n) < tv < 2 * tv_noise_floor(cells, n)


def test_projection_width():
    assert projection_width(5) == 3
    assert projection_width(11) == 2
    assert projection_width(37) == 1


def test_homogeneity():
    rng = np.random.default_rng(3)
    a = {"x": rng.integers(0, 5, 30_000), "y": rng.integers(0, 5, 30_000)}
    b = {"x": rng.integers(0, 5, 30_000), "y": rng.integers(0, 5, 30_000)}
    assert chi2_homogeneity(a, b, ["x", "y"], 5).p_value > 1e-3
    c = {"x": b["x"], "y": b["x"]}
    assert chi2_homogeneity(a, c, ["x", "y"], 5).p_value < 1e-6
    const = {"x": np.zeros(10, dtype=np.int64)}
    assert chi2_homogeneity(const, const, ["x"], 5).p_value == 1.0


def test_column_ranges_and_report():
    r = column_ranges(["istar", "col", "r"], 5, 3, 3)
    assert r == {"istar": (3, 5), "col": (0, 3), "r": (0, 5)}
    rng = np.random.default_rng(4)
    samples = {"istar": rng.integers(3, 5, 1000), "col": rng.integers(0, 3, 1000), "r": rng.integers(0, 5, 1000)}
    assert [x.column for x in uniformity_report(samples, r)] == ["istar", "col", "r"]
