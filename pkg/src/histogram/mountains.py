# mountains.py
"""
Segmentation of a smoothed pitch histogram into mountains.

A mountain is one run of the histogram between two valleys, where a valley is
a sign change of the derivative from falling to rising or the point where the
histogram drops to its floor. Mountains that are too low relative to their
neighbours are merged into them; mountains carrying too little mass are
discarded.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.constants import (
    DEFAULT_MIN_MASS,
    DEFAULT_MIN_PROMINENCE,
    SUPPORT_FLOOR_FRACTION,
)
from src.exceptions import ParameterError
from src.histogram.histogram import Histogram, derivative

logger = logging.getLogger(__name__)

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class MountainRange:
    """
    Contiguous histogram region around one pitch.

    lo and hi are bin edges in cents; peak_bin is the center of the tallest
    bin inside; area is the sum of counts over the range.
    """

    lo: float
    hi: float
    peak_bin: float
    area: float

    def __post_init__(self) -> None:
        if not self.lo < self.peak_bin < self.hi:
            raise ParameterError(
                f"Peak {self.peak_bin} must lie strictly inside [{self.lo}, {self.hi}]"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, cents: float) -> bool:
        return self.lo <= cents <= self.hi


@dataclass
class _Segment:
    start: int
    stop: int
    # counts at the separating valley; None where the run hits the floor
    left: float | None
    right: float | None

    def prominence(self, counts: np.ndarray) -> float:
        peak = float(counts[self.start : self.stop].max())
        base = max(self.left or 0.0, self.right or 0.0)
        return max(peak - base, 0.0)


def _support_runs(counts: np.ndarray, floor: float) -> list[tuple[int, int]]:
    """Half-open index ranges where counts exceed floor."""
    above = np.concatenate(([False], counts > floor, [False])).astype(np.int8)
    change = np.flatnonzero(np.diff(above))
    return [(int(a), int(b)) for a, b in zip(change[::2], change[1::2], strict=True)]


def _split_run(
    counts: np.ndarray, slope: np.ndarray, start: int, stop: int
) -> list[_Segment]:
    """Split one support run at each falling-to-rising derivative sign change."""
    signs = np.sign(slope[start:stop])
    nonzero = np.flatnonzero(signs)
    if nonzero.size == 0:
        return [_Segment(start, stop, None, None)]
    # flat stretches inherit the previous direction
    carried = np.maximum.accumulate(np.where(signs != 0, np.arange(signs.size), 0))
    filled = signs[carried]
    filled[: nonzero[0]] = signs[nonzero[0]]

    cuts: list[int] = []
    for i in np.flatnonzero((filled[:-1] < 0) & (filled[1:] > 0)):
        a, b = start + int(i), start + int(i) + 1
        valley = a if counts[a] < counts[b] else b
        if start < valley < stop:
            cuts.append(valley)

    bounds = [start, *cuts, stop]
    segments = []
    for k, (a, b) in enumerate(zip(bounds, bounds[1:], strict=False)):
        left = float(counts[a]) if k > 0 else None
        right = float(counts[b]) if k < len(bounds) - 2 else None
        segments.append(_Segment(a, b, left, right))
    return segments


def _merge_low_segments(
    segments: list[_Segment], counts: np.ndarray, threshold: float
) -> list[_Segment]:
    """Merge (or drop, when isolated) the least prominent segment until all pass."""
    segments = list(segments)
    while segments:
        scores = [segment.prominence(counts) for segment in segments]
        k = int(np.argmin(scores))
        if scores[k] >= threshold:
            break
        weak = segments[k]
        if weak.left is None and weak.right is None:
            logger.debug(
                f"Dropping isolated bump at bins [{weak.start}, {weak.stop}) "
                f"(prominence {scores[k]:.3f})"
            )
            del segments[k]
            continue
        # cross the higher of the two valleys
        merge_left = weak.right is None or (
            weak.left is not None and weak.left >= weak.right
        )
        if merge_left:
            neighbour = segments[k - 1]
            segments[k - 1 : k + 1] = [
                _Segment(neighbour.start, weak.stop, neighbour.left, weak.right)
            ]
        else:
            neighbour = segments[k + 1]
            segments[k : k + 2] = [
                _Segment(weak.start, neighbour.stop, weak.left, neighbour.right)
            ]
    return segments


def find_mountain_ranges(
    smoothed: Histogram,
    min_prominence: float = DEFAULT_MIN_PROMINENCE,
    min_mass: float = DEFAULT_MIN_MASS,
) -> list[MountainRange]:
    """
    Detect mountains of a smoothed histogram.

    Args:
        smoothed: Output of smooth()
        min_prominence: Minimum peak prominence as a fraction of the maximum count
        min_mass: Minimum mountain mass as a fraction of the total mass

    Returns:
        Disjoint ranges sorted by lo; empty for an all-zero histogram
    """
    if not 0 < min_prominence < 1 or not 0 < min_mass < 1:
        raise ParameterError("min_prominence and min_mass must lie in (0, 1)")
    counts = smoothed.counts
    if counts.size < 2:
        return []
    peak = float(counts.max())
    if peak <= 0:
        return []

    slope = derivative(smoothed)
    segments: list[_Segment] = []
    for start, stop in _support_runs(counts, peak * SUPPORT_FLOOR_FRACTION):
        segments.extend(_split_run(counts, slope, start, stop))
    segments = _merge_low_segments(segments, counts, min_prominence * peak)

    total = smoothed.total_mass
    edges = smoothed.edges
    centers = smoothed.centers
    ranges: list[MountainRange] = []
    for segment in segments:
        area = float(counts[segment.start : segment.stop].sum())
        if area < min_mass * total:
            logger.debug(
                f"Discarding mountain at bins [{segment.start}, {segment.stop}): "
                f"mass fraction {area / total:.4f} below {min_mass}"
            )
            continue
        top = segment.start + int(np.argmax(counts[segment.start : segment.stop]))
        ranges.append(
            MountainRange(
                lo=float(edges[segment.start]),
                hi=float(edges[segment.stop]),
                peak_bin=float(centers[top]),
                area=area,
            )
        )

    logger.debug(f"Found {len(ranges)} mountain ranges")
    return ranges


def mountain_area(h: Histogram, r: MountainRange) -> float:
    """
    Sum of counts of the bins whose centers lie in [r.lo, r.hi].

    Raises:
        ParameterError: If the range leaves the histogram span or covers no bin
    """
    span_lo, span_hi = h.span
    slack = 1e-9 * max(abs(span_lo), abs(span_hi), 1.0)
    if r.lo < span_lo - slack or r.hi > span_hi + slack:
        raise ParameterError(
            f"Range [{r.lo}, {r.hi}] lies outside the histogram span "
            f"[{span_lo}, {span_hi}]"
        )
    centers = h.centers
    inside = (centers >= r.lo) & (centers <= r.hi)
    if not inside.any():
        raise ParameterError(f"Range [{r.lo}, {r.hi}] covers no histogram bin")
    return float(h.counts[inside].sum())


def find_shahed(h: Histogram, ranges: list[MountainRange]) -> MountainRange:
    """
    The mountain with the largest area in h; ties go to the lower mountain.

    Raises:
        ParameterError: If ranges is empty
    """
    if not ranges:
        raise ParameterError("Cannot pick a shāhed from an empty list of ranges")
    areas = [mountain_area(h, r) for r in ranges]
    best = max(areas)
    candidates = [
        r for r, area in zip(ranges, areas, strict=True) if area >= best * (1 - _TIE_RTOL)
    ]
    shahed = min(candidates, key=lambda r: r.lo)
    logger.debug(f"Shāhed mountain [{shahed.lo}, {shahed.hi}] peak {shahed.peak_bin}")
    return shahed
