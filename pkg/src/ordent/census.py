"""Counting ordinal patterns: distributions, transitions, and growth curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .patterns import (
    PatternCode,
    check_length,
    decode_pattern,
    encode_pattern,
    extract_patterns,
    as_samples,
)

# dense count arrays up to 10! entries; hash maps beyond
_DENSE_LENGTH_LIMIT = 10


@dataclass
class PatternDistribution:
    """Empirical (or synthetic) distribution over the L! patterns of one length."""

    length: int
    counts: dict
    total: int
    probs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("total count must be positive")
        if not self.probs:
            self.probs = {c: n / self.total for c, n in self.counts.items() if n > 0}

    @property
    def allowed_count(self) -> int:
        return sum(1 for n in self.counts.values() if n > 0)

    def prob_vector(self) -> np.ndarray:
        """Positive probabilities as an array (order: ascending code)."""
        codes = sorted(self.probs)
        return np.array([self.probs[c] for c in codes], dtype=np.float64)

    def probability(self, pattern) -> float:
        return self.probs.get(_as_code(pattern), 0.0)

    @classmethod
    def from_codes(cls, codes: np.ndarray, length: int) -> "PatternDistribution":
        check_length(length)
        codes = np.asarray(codes, dtype=np.int64)
        if codes.size == 0:
            raise ValueError("no pattern codes to count")
        if length <= _DENSE_LENGTH_LIMIT:
            dense = np.bincount(codes, minlength=math.factorial(length))
            nz = np.flatnonzero(dense)
            counts = {int(c): int(dense[c]) for c in nz}
        else:
            uniq, n = np.unique(codes, return_counts=True)
            counts = {int(c): int(k) for c, k in zip(uniq, n)}
        return cls(length=length, counts=counts, total=int(codes.size))


def _as_code(pattern) -> PatternCode:
    if isinstance(pattern, (int, np.integer)):
        return int(pattern)
    return encode_pattern(pattern)


def census(ts, length: int) -> PatternDistribution:
    """Count every sliding window (step 1) of ``length`` samples."""
    codes = extract_patterns(ts, length, step=1)
    return PatternDistribution.from_codes(codes, length)


def forbidden_patterns(dist: PatternDistribution) -> set:
    """Codes never observed in the census.

    These are *missing* patterns: absence in a finite sample does not prove
    a pattern can never occur for the underlying process.
    """
    if dist.length > _DENSE_LENGTH_LIMIT:
        raise ValueError(
            f"enumerating missing patterns at length {dist.length} would require "
            f"{math.factorial(dist.length)} candidates; use length <= {_DENSE_LENGTH_LIMIT}"
        )
    observed = np.fromiter(
        (c for c, n in dist.counts.items() if n > 0), dtype=np.int64, count=-1
    )
    missing = np.setdiff1d(np.arange(math.factorial(dist.length), dtype=np.int64), observed)
    return {int(c) for c in missing}


@dataclass
class TransitionMatrix:
    """Row-normalized frequencies of pattern(t) -> pattern(t+1) transitions."""

    length: int
    rows: dict  # code -> {code -> probability}

    def row(self, pattern) -> dict:
        return dict(self.rows.get(_as_code(pattern), {}))

    def probability(self, source, target) -> float:
        return self.rows.get(_as_code(source), {}).get(_as_code(target), 0.0)

    def row_patterns(self) -> list:
        return [decode_pattern(c, self.length) for c in sorted(self.rows)]


def transition_matrix(ts, length: int) -> TransitionMatrix:
    """Estimate one-step pattern transition probabilities from consecutive windows."""
    x = as_samples(ts)
    if x.size < length + 1:
        raise ValueError(
            f"series of length {x.size} too short for transitions at window {length}"
        )
    codes = extract_patterns(x, length, step=1)
    pairs = np.stack((codes[:-1], codes[1:]), axis=1)
    uniq, counts = np.unique(pairs, axis=0, return_counts=True)
    row_totals: dict = {}
    for (src, _), n in zip(uniq, counts):
        row_totals[int(src)] = row_totals.get(int(src), 0) + int(n)
    rows: dict = {}
    for (src, dst), n in zip(uniq, counts):
        rows.setdefault(int(src), {})[int(dst)] = int(n) / row_totals[int(src)]
    return TransitionMatrix(length=length, rows=rows)


@dataclass
class CensusCurve:
    """ln(distinct pattern count) vs series length, averaged over realizations."""

    length: int
    t_grid: np.ndarray
    values: np.ndarray  # mean of per-realization ln counts
    stddev: np.ndarray
    per_realization: np.ndarray  # shape (realizations, len(t_grid))
    meta: dict | None = None

    @property
    def final_value(self) -> float:
        return float(self.values[-1])

    @property
    def saturation(self) -> float:
        """ln L!, the ceiling of the curve."""
        return math.lgamma(self.length + 1.0)


def finite_pc_curve(
    spec,
    length: int,
    t_grid: Sequence[int],
    realizations: int = 10,
    seed: int = 0,
    workers: int = 1,
) -> CensusCurve:
    """Distinct-pattern growth ln A(L, T) on a grid of series lengths.

    Each realization r uses seed + r.  Scanning a realization stops early
    once all L! patterns have been seen (the curve is exactly ln L! from
    there on) or once the distinct count has been flat over the trailing
    10% of the grid (the remaining grid points repeat the current value).
    """
    from .processgen import generate, replace_spec

    check_length(length)
    grid = np.asarray(list(t_grid), dtype=np.int64)
    if grid.size == 0 or (np.diff(grid) <= 0).any():
        raise ValueError("t_grid must be a non-empty strictly increasing sequence")
    if grid[0] < length:
        raise ValueError(f"smallest grid length {grid[0]} is below the window length {length}")
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations}")

    n_all = math.factorial(length)
    flat_window = max(1, math.ceil(0.1 * grid.size))

    def one_realization(r: int) -> np.ndarray:
        series = generate(replace_spec(spec, t=int(grid[-1]), seed=seed + r)).samples
        counts = np.zeros(grid.size, dtype=np.int64)
        seen: set = set()
        next_start = 0  # first window index not yet scanned
        for i, t in enumerate(grid):
            last_start = int(t) - length  # windows fully inside the first t samples
            if last_start >= next_start:
                chunk = extract_patterns(series[next_start : int(t)], length)
                seen.update(np.unique(chunk).tolist())
                next_start = last_start + 1
            counts[i] = len(seen)
            if counts[i] == n_all:
                counts[i + 1 :] = n_all
                break
            if i >= flat_window and counts[i] == counts[i - flat_window]:
                counts[i + 1 :] = counts[i]
                break
        return np.log(counts.astype(np.float64))

    from .complexity import _run_indexed

    rows = _run_indexed(one_realization, realizations, workers)
    per_real = np.vstack(rows)
    values = per_real.mean(axis=0)
    stddev = per_real.std(axis=0, ddof=1) if realizations > 1 else np.zeros(grid.size)
    return CensusCurve(
        length=length,
        t_grid=grid,
        values=values,
        stddev=stddev,
        per_realization=per_real,
        meta={"process": spec.describe(), "realizations": realizations, "seed": seed},
    )
