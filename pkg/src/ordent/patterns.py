"""Ordinal patterns: rank sequences of sliding windows and their integer codes.

A window of L real samples is summarized by the permutation that sorts it:
the rank sequence (r0, ..., r_{L-1}) such that x[r0] <= x[r1] <= ... with
ties broken in favor of the earlier index.  Patterns are packed into single
integers (their lexicographic rank among all L! permutations) so that large
series can be counted with plain array machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

# L! must fit in a signed 64-bit integer, which caps the pattern length.
MAX_PATTERN_LENGTH = 20

# A pattern code is a plain int in [0, L!): the lexicographic rank of the
# rank sequence among all permutations of {0, ..., L-1}.
PatternCode = int

# A pattern itself is a tuple of ints forming a permutation of 0..L-1.
OrdinalPattern = tuple


@dataclass
class TimeSeries:
    """A finite real-valued sample sequence plus optional generator metadata."""

    samples: np.ndarray
    meta: dict | None = None

    def __post_init__(self):
        x = np.ascontiguousarray(self.samples, dtype=np.float64)
        if x.ndim != 1:
            raise ValueError(f"samples must be one-dimensional, got shape {x.shape}")
        if not np.isfinite(x).all():
            raise ValueError("samples contain NaN or infinite entries")
        self.samples = x

    def __len__(self) -> int:
        return self.samples.size


def as_samples(ts) -> np.ndarray:
    """Coerce a TimeSeries or array-like into a validated 1-D float array."""
    if isinstance(ts, TimeSeries):
        return ts.samples
    x = np.ascontiguousarray(ts, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"series must be one-dimensional, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("series contains NaN or infinite entries")
    return x


def check_length(length: int) -> None:
    if length < 2:
        raise ValueError(f"pattern length must be >= 2, got {length}")
    if length > MAX_PATTERN_LENGTH:
        raise ValueError(
            f"pattern length {length} unsupported: {length}! exceeds 64-bit range "
            f"(max {MAX_PATTERN_LENGTH})"
        )


def pattern_of(window: Sequence[float]) -> OrdinalPattern:
    """Rank sequence of one window.

    Returns the tuple (r0, ..., r_{L-1}) of indices ordered by increasing
    value; equal values keep their original order (earlier index counts as
    smaller).

    >>> pattern_of((0.3, -0.5, 1.2, 0.7))
    (1, 0, 3, 2)
    """
    w = np.asarray(window, dtype=np.float64)
    if w.ndim != 1 or w.size < 2:
        raise ValueError(f"window must hold at least 2 values, got {w.size}")
    check_length(w.size)
    if not np.isfinite(w).all():
        raise ValueError("window contains NaN or infinite entries")
    # Stable sort = ties resolved by original index, i.e. (value, index) order.
    return tuple(int(i) for i in np.argsort(w, kind="stable"))


def validate_pattern(pattern: Sequence[int]) -> tuple:
    p = tuple(int(v) for v in pattern)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{p} is not a permutation of 0..{len(p) - 1}")
    check_length(len(p))
    return p


def encode_pattern(pattern: Sequence[int]) -> PatternCode:
    """Lexicographic rank of a pattern among all permutations of its length.

    Inverse of :func:`decode_pattern`; the map is a bijection onto [0, L!).
    """
    p = validate_pattern(pattern)
    length = len(p)
    code = 0
    for i in range(length - 1):
        smaller_after = sum(1 for j in range(i + 1, length) if p[j] < p[i])
        code += smaller_after * factorial(length - 1 - i)
    return code


def decode_pattern(code: PatternCode, length: int) -> OrdinalPattern:
    """Pattern whose lexicographic rank is ``code`` among length-``length`` permutations."""
    check_length(length)
    code = int(code)
    if not 0 <= code < factorial(length):
        raise ValueError(f"code {code} out of range for length {length}")
    remaining = list(range(length))
    out = []
    for i in range(length):
        f = factorial(length - 1 - i)
        idx, code = divmod(code, f)
        out.append(remaining.pop(idx))
    return tuple(out)


def _encode_windows(windows: np.ndarray) -> np.ndarray:
    """Vectorized Lehmer coding of a (n, L) block of windows."""
    length = windows.shape[1]
    ranks = np.argsort(windows, axis=1, kind="stable")
    # digit i counts later entries smaller than ranks[:, i]
    later = np.triu(np.ones((length, length), dtype=bool), k=1)
    smaller = ranks[:, :, None] > ranks[:, None, :]
    digits = np.sum(smaller & later, axis=2, dtype=np.int64)
    weights = np.array(
        [factorial(length - 1 - i) for i in range(length)], dtype=np.int64
    )
    return digits @ weights


def extract_patterns(ts, length: int, step: int = 1) -> np.ndarray:
    """Codes of all sliding windows of ``length`` samples, ``step`` apart.

    Returns an int64 array of floor((T - L) / step) + 1 pattern codes, where
    entry k encodes the window starting at sample k * step.
    """
    x = as_samples(ts)
    check_length(length)
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if x.size < length:
        raise ValueError(f"series of length {x.size} too short for windows of {length}")
    windows = np.lib.stride_tricks.sliding_window_view(x, length)[::step]
    n = windows.shape[0]
    codes = np.empty(n, dtype=np.int64)
    # bound scratch memory: the pairwise comparison tensor is chunk * L * L bytes
    chunk = max(1, (1 << 22) // (length * length))
    for start in range(0, n, chunk):
        block = windows[start : start + chunk]
        codes[start : start + block.shape[0]] = _encode_windows(block)
    return codes
