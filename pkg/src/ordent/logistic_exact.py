"""Closed-form ordinal analysis of the full-range logistic map x -> 4x(1-x).

The stationary density of the full-range map is the arcsine law with CDF
F(x) = (2/pi) arcsin(sqrt(x)).  Order-L pattern cells are located by
bracketing the crossings of the iterates x, f(x), ..., f^(L-1)(x) and
labeling each gap by the pattern of a midpoint orbit; pattern and
transition probabilities then follow from interval arithmetic under F and
the two explicit preimage branches of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .census import TransitionMatrix
from .patterns import OrdinalPattern, encode_pattern, pattern_of

_GRID_POINTS = 10_001
_ROOT_TOL = 1e-14
_MERGE_TOL = 5e-12

Interval = Tuple[float, float]


def logistic_map(x):
    return 4.0 * np.asarray(x, dtype=np.float64) * (1.0 - np.asarray(x, dtype=np.float64))


def arcsine_cdf(x):
    """F(x) = (2/pi) arcsin(sqrt(x)) on [0, 1]."""
    arr = np.asarray(x, dtype=np.float64)
    out = (2.0 / math.pi) * np.arcsin(np.sqrt(arr))
    return float(out) if arr.ndim == 0 else out


def measure_of(intervals: Sequence[Interval]) -> float:
    """Arcsine measure of a union of pairwise-disjoint subintervals of [0, 1]."""
    total = 0.0
    for a, b in intervals:
        if b < a:
            raise ValueError(f"interval [{a}, {b}] is reversed")
        if a < -1e-12 or b > 1.0 + 1e-12:
            raise ValueError(f"interval [{a}, {b}] lies outside [0, 1]")
        a = min(max(a, 0.0), 1.0)
        b = min(max(b, 0.0), 1.0)
        total += arcsine_cdf(b) - arcsine_cdf(a)
    return total


def _orbit(x: float, length: int) -> np.ndarray:
    out = np.empty(length)
    v = x
    out[0] = v
    for i in range(1, length):
        v = 4.0 * v * (1.0 - v)
        out[i] = v
    return out


def _orbit_pattern(x: float, length: int) -> OrdinalPattern:
    return pattern_of(_orbit(x, length))


@dataclass
class OrdinalCellSet:
    """Pattern-labeled interval partition of [0, 1] for the full-range map.

    Interval endpoints are carried as closed pairs [a, b]; which cell a
    shared breakpoint belongs to follows from the tie rule (evaluate the
    orbit pattern at the point itself), recorded in ``boundary_owner``.
    Isolated points whose pattern matches neither neighbor appear as
    degenerate [x, x] intervals.
    """

    length: int
    cells: List[Tuple[OrdinalPattern, List[Interval]]]
    boundary_owner: Dict[float, OrdinalPattern]

    def intervals_for(self, pattern) -> List[Interval]:
        key = tuple(pattern)
        for pat, intervals in self.cells:
            if pat == key:
                return list(intervals)
        return []

    def patterns(self) -> List[OrdinalPattern]:
        return [pat for pat, _ in self.cells]

    def boundaries(self) -> List[float]:
        """Interior breakpoints separating cells, in increasing order."""
        pts = sorted(self.boundary_owner)
        return [p for p in pts if 0.0 < p < 1.0]

    def measures(self) -> Dict[OrdinalPattern, float]:
        return {pat: measure_of(iv) for pat, iv in self.cells}


def ordinal_cells(length: int) -> OrdinalCellSet:
    """Locate the order-``length`` pattern cells (supported for length 2..5)."""
    if not 2 <= length <= 5:
        raise ValueError(f"cell construction supported for lengths 2..5, got {length}")

    grid = np.linspace(0.0, 1.0, _GRID_POINTS)
    iterates = np.empty((length, grid.size))
    iterates[0] = grid
    for i in range(1, length):
        iterates[i] = logistic_map(iterates[i - 1])

    roots = {0.0, 1.0}
    for i in range(length):
        for j in range(i + 1, length):
            diff = iterates[i] - iterates[j]
            roots.update(_bracketed_roots(diff, grid, i, j, length))

    points = _merge_close(sorted(roots))

    # label each gap by the pattern at its midpoint, then merge equal neighbors
    segments: List[Tuple[float, float, OrdinalPattern]] = []
    for a, b in zip(points[:-1], points[1:]):
        pat = _orbit_pattern(0.5 * (a + b), length)
        if segments and segments[-1][2] == pat:
            prev_a, _, _ = segments.pop()
            segments.append((prev_a, b, pat))
        else:
            segments.append((a, b, pat))

    boundary_owner: Dict[float, OrdinalPattern] = {}
    cell_map: Dict[OrdinalPattern, List[Interval]] = {}
    for a, b, pat in segments:
        cell_map.setdefault(pat, []).append((a, b))

    breakpoints = [seg[0] for seg in segments] + [segments[-1][1]]
    for x in breakpoints:
        pat = _orbit_pattern(x, length)
        boundary_owner[x] = pat
        if pat not in cell_map or not _touches(cell_map[pat], x):
            # isolated point: its tie-rule pattern matches no adjacent cell
            cell_map.setdefault(pat, []).append((x, x))

    cells = sorted(cell_map.items(), key=lambda kv: kv[1][0][0])
    return OrdinalCellSet(
        length=length,
        cells=[(pat, sorted(iv)) for pat, iv in cells],
        boundary_owner=boundary_owner,
    )


def _touches(intervals: List[Interval], x: float) -> bool:
    return any(a - 1e-12 <= x <= b + 1e-12 for a, b in intervals)


def _bracketed_roots(diff, grid, i, j, length) -> List[float]:
    """Roots of f^i(x) - f^j(x) via grid sign changes refined by bisection."""

    def h(x: float) -> float:
        orbit = _orbit(x, length)
        return orbit[i] - orbit[j]

    roots = []
    sign = np.sign(diff)
    for k in np.flatnonzero(sign == 0.0):
        roots.append(float(grid[k]))
    changes = np.flatnonzero(sign[:-1] * sign[1:] < 0.0)
    for k in changes:
        a, b = float(grid[k]), float(grid[k + 1])
        fa = h(a)
        for _ in range(200):
            m = 0.5 * (a + b)
            fm = h(m)
            if fm == 0.0 or (b - a) < _ROOT_TOL:
                a = b = m
                break
            if (fa < 0) == (fm < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return roots


def _merge_close(points: List[float]) -> List[float]:
    merged = [points[0]]
    for p in points[1:]:
        if p - merged[-1] <= _MERGE_TOL:
            # keep exact endpoints 0/1 over near-duplicates
            if p in (0.0, 1.0):
                merged[-1] = p
        else:
            merged.append(p)
    return merged


def _preimage(interval: Interval) -> List[Interval]:
    """The two monotone-branch preimages of [c, d] under x -> 4x(1-x)."""
    c, d = interval
    c = min(max(c, 0.0), 1.0)
    d = min(max(d, 0.0), 1.0)
    sc = math.sqrt(max(1.0 - c, 0.0))
    sd = math.sqrt(max(1.0 - d, 0.0))
    left = ((1.0 - sc) / 2.0, (1.0 - sd) / 2.0)
    right = ((1.0 + sd) / 2.0, (1.0 + sc) / 2.0)
    return [left, right]


def _intersect(a: Interval, b: Interval) -> Interval | None:
    lo = max(a[0], b[0])
    hi = min(a[1], b[1])
    return (lo, hi) if hi > lo else None


def preimage_intervals(intervals: Sequence[Interval]) -> List[Interval]:
    """Preimage of a union of intervals under the full-range map."""
    out: List[Interval] = []
    for iv in intervals:
        for pre in _preimage(iv):
            if pre[1] > pre[0]:
                out.append(pre)
    return sorted(out)


def exact_transition_probs(length: int) -> TransitionMatrix:
    """Pattern-to-pattern transition probabilities under the arcsine measure.

    Row r is mu(P_r intersect f^-1 P_r') / mu(P_r) over all target cells;
    rows sum to 1 because the measure is invariant under the map.
    """
    if not 2 <= length <= 4:
        raise ValueError(f"exact transitions supported for lengths 2..4, got {length}")
    cells = ordinal_cells(length)
    rows: dict = {}
    for src_pat, src_intervals in cells.cells:
        mu_src = measure_of(src_intervals)
        if mu_src <= 0.0:
            continue
        row: dict = {}
        for dst_pat, dst_intervals in cells.cells:
            pre = preimage_intervals(dst_intervals)
            joint = 0.0
            for s in src_intervals:
                for p in pre:
                    overlap = _intersect(s, p)
                    if overlap is not None:
                        joint += measure_of([overlap])
            if joint > 1e-15:
                row[encode_pattern(dst_pat)] = joint / mu_src
        rows[encode_pattern(src_pat)] = row
    return TransitionMatrix(length=length, rows=rows)
