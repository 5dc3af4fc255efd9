"""Distribution comparisons between real and simulated views.

Samples are dicts of equal-length integer columns as produced by the
protocol modules' vectorized samplers.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class UniformityResult:
    column: str
    lo: int
    hi: int
    statistic: float
    p_value: float


def chi2_uniform(values: np.ndarray, lo: int, hi: int, column: str = "") -> UniformityResult:
    """Chi-square goodness of fit of ``values`` against uniform on ``[lo, hi)``."""
    values = np.asarray(values)
    if values.size and (values.min() < lo or values.max() >= hi):
        raise ValueError(f"{column}: values outside [{lo}, {hi})")
    counts = np.bincount(values - lo, minlength=hi - lo)
    res = stats.chisquare(counts)
    return UniformityResult(column, lo, hi, float(res.statistic), float(res.pvalue))


def _joint_keys(samples: dict, columns: Sequence[str], q: int) -> np.ndarray:
    key = np.zeros(len(samples[columns[0]]), dtype=np.int64)
    for c in columns:
        key = key * q + np.asarray(samples[c], dtype=np.int64)
    return key


def tv_distance(real: dict, sim: dict, columns: Sequence[str], q: int) -> float:
    """Empirical total-variation distance between the joint laws of ``columns``.

    Estimates are biased upward by about sqrt(cells / samples); keep the
    projection small relative to the sample size.
    """
    if q ** len(columns) >= 1 << 62:
        raise ValueError("projection too large to key")
    a, b = _joint_keys(real, columns, q), _joint_keys(sim, columns, q)
    keys, inv = np.unique(np.concatenate([a, b]), return_inverse=True)
    ca = np.bincount(inv[: len(a)], minlength=len(keys)) / len(a)
    cb = np.bincount(inv[len(a):], minlength=len(keys)) / len(b)
    return float(0.5 * np.abs(ca - cb).sum())


def projection_width(q: int, max_cells: int = 200) -> int:
    """Widest projection whose joint support has at most ``max_cells`` cells."""
    w = 1
    while q ** (w + 1) <= max_cells:
        w += 1
    return w


def tv_noise_floor(cells: int, samples: int) -> float:
    """Approximate expected empirical TV between two equal samples of one law: sqrt(cells / (pi N))."""
    return math.sqrt(cells / (math.pi * samples))


@dataclass(frozen=True)
class HomogeneityResult:
    columns: tuple
    cells: int
    statistic: float
    dof: int
    p_value: float


def chi2_homogeneity(real: dict, sim: dict, columns: Sequence[str], q: int) -> HomogeneityResult:
    """Two-sample chi-square test that ``columns`` have the same joint law in both samples."""
    a, b = _joint_keys(real, columns, q), _joint_keys(sim, columns, q)
    keys, inv = np.unique(np.concatenate([a, b]), return_inverse=True)
    table = np.vstack([np.bincount(inv[: len(a)], minlength=len(keys)),
                       np.bincount(inv[len(a):], minlength=len(keys))])
    if table.shape[1] < 2:
        return HomogeneityResult(tuple(columns), int(table.shape[1]), 0.0, 0, 1.0)
    stat, p, dof, _ = stats.chi2_contingency(table, correction=False)
    return HomogeneityResult(tuple(columns), int(table.shape[1]), float(stat), int(dof), float(p))


def column_ranges(columns: Sequence[str], q: int, low: int, colors: int | None = None) -> dict:
    """Support of each view column: the challenge lives in ``[low, q)``, colors in ``[0, colors)``."""
    out = {}
    for c in columns:
        if c == "istar":
            out[c] = (low, q)
        elif c == "col":
            out[c] = (0, colors)
        else:
            out[c] = (0, q)
    return out


def uniformity_report(samples: dict, ranges: dict) -> list[UniformityResult]:
    return [chi2_uniform(samples[c], lo, hi, c) for c, (lo, hi) in ranges.items()]


def to_dicts(results) -> list[dict]:
    return [asdict(r) for r in results]
