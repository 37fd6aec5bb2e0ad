# dtw.py
"""
Dynamic time warping between an F0 trace and the expanded transcription.

Steps are (1, 0), (0, 1) and (1, 1) with unit weight; the local distance is
the absolute cents difference, or a fixed penalty for unvoiced trace frames.
Rows of the accumulated-cost table are kept as (first column, values) so an
optional band only stores the cells it allows.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.constants import DEFAULT_UNVOICED_PENALTY_CENTS
from src.exceptions import EmptyInputError, ParameterError

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]
FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class AlignmentPath:
    """
    Warping path as (trace_frame, reference_frame) pairs from (0, 0) to
    (last, last), each step advancing one or both indices by one.
    """

    pairs: IntArray
    cost: float

    def __post_init__(self) -> None:
        pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.shape[0] == 0 or tuple(pairs[0]) != (0, 0):
            raise ParameterError("Alignment path must start at (0, 0)")
        steps = np.diff(pairs, axis=0)
        if np.any(steps < 0) or np.any(steps > 1) or np.any(steps.sum(axis=1) == 0):
            raise ParameterError("Alignment path steps must be (1,0), (0,1) or (1,1)")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n_trace(self) -> int:
        return int(self.pairs[-1, 0]) + 1

    @property
    def n_reference(self) -> int:
        return int(self.pairs[-1, 1]) + 1

    def __len__(self) -> int:
        return int(self.pairs.shape[0])


def local_distances(
    trace_cents: FloatArray, reference_cents: FloatArray, penalty: float
) -> FloatArray:
    """|trace - reference| for one trace frame against a slice of reference frames."""
    if np.isnan(trace_cents):
        return np.full(reference_cents.shape, penalty)
    return np.abs(reference_cents - trace_cents)


def _row_bounds(n: int, m: int, band: int | None) -> tuple[IntArray, IntArray]:
    if band is None:
        return np.zeros(n, dtype=np.int64), np.full(n, m, dtype=np.int64)
    width = max(band, math.ceil(m / n))
    centers = np.arange(n) * ((m - 1) / max(n - 1, 1))
    lo = np.clip(np.floor(centers - width), 0, m).astype(np.int64)
    hi = np.clip(np.ceil(centers + width) + 1, 0, m).astype(np.int64)
    lo[0] = 0
    hi[-1] = m
    return lo, hi


def _shift_in(values: FloatArray, values_lo: int, columns: IntArray) -> FloatArray:
    """values indexed by absolute column, inf outside the stored slice."""
    out = np.full(columns.shape, np.inf)
    inside = (columns >= values_lo) & (columns < values_lo + values.size)
    out[inside] = values[columns[inside] - values_lo]
    return out


def dtw_align(
    trace_cents: npt.ArrayLike,
    reference_cents: npt.ArrayLike,
    unvoiced_penalty: float = DEFAULT_UNVOICED_PENALTY_CENTS,
    band: int | None = None,
) -> AlignmentPath:
    """
    Globally optimal warping path between a trace and a reference.

    Args:
        trace_cents: Absolute cents per trace frame, NaN for unvoiced frames
        reference_cents: Absolute cents per reference frame
        unvoiced_penalty: Local distance charged for an unvoiced trace frame
        band: Optional half-width of a band around the diagonal, in frames

    Returns:
        Path with its total cost; backtracking prefers the diagonal step on ties
    """
    x = np.asarray(trace_cents, dtype=float)
    y = np.asarray(reference_cents, dtype=float)
    if x.size == 0 or y.size == 0:
        raise EmptyInputError("DTW needs two non-empty sequences")
    if np.isnan(y).any():
        raise ParameterError("Reference sequence cannot contain NaN")
    if band is not None and band < 1:
        raise ParameterError(f"DTW band must be >= 1, got {band}")

    n, m = x.size, y.size
    lo, hi = _row_bounds(n, m, band)
    rows: list[FloatArray] = []

    for i in range(n):
        columns = np.arange(lo[i], hi[i])
        local = local_distances(x[i], y[lo[i] : hi[i]], unvoiced_penalty)
        if i == 0:
            entry = np.full(columns.shape, np.inf)
            entry[0] = 0.0
        else:
            prev = rows[i - 1]
            entry = np.minimum(
                _shift_in(prev, int(lo[i - 1]), columns - 1),
                _shift_in(prev, int(lo[i - 1]), columns),
            )
        # D[j] = local[j] + min(entry[j], D[j-1]), unrolled into a running minimum
        csum = np.cumsum(local)
        rows.append(csum + np.minimum.accumulate(entry - (csum - local)))

    def cell(i: int, j: int) -> float:
        if i < 0 or j < lo[i] or j >= hi[i]:
            return math.inf
        return float(rows[i][j - lo[i]])

    cost = cell(n - 1, m - 1)
    if not math.isfinite(cost):
        raise ParameterError("No warping path fits inside the requested band")

    i, j = n - 1, m - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        options = [
            (cell(i - 1, j - 1) if i > 0 and j > 0 else math.inf, (i - 1, j - 1)),
            (cell(i - 1, j) if i > 0 else math.inf, (i - 1, j)),
            (cell(i, j - 1) if j > 0 else math.inf, (i, j - 1)),
        ]
        # min keeps the first of equal values: diagonal, vertical, horizontal
        _, (i, j) = min(options, key=lambda option: option[0])
        path.append((i, j))
    path.reverse()

    logger.debug(f"DTW {n}x{m}: cost {cost:.2f}, path length {len(path)}")
    return AlignmentPath(pairs=np.array(path, dtype=np.int64), cost=cost)
