# histogram.py
import logging
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from scipy.ndimage import uniform_filter1d

from src.constants import (
    DEFAULT_BIN_WIDTH,
    DEFAULT_MAX_F0_HZ,
    DEFAULT_MIN_F0_HZ,
    DEFAULT_SMOOTHING_WINDOW,
    TRACE_HOP_ATOL_SECONDS,
)
from src.exceptions import EmptyInputError, ParameterError
from src.pitch.cents import hz_array_to_cents

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class PitchTrace:
    """
    Time-stamped F0 frames. Unvoiced frames carry NaN in f0_hz.

    Times strictly increase with a constant hop; voiced frames lie within the
    ingestion band.
    """

    times: FloatArray
    f0_hz: FloatArray
    hop: float
    cents: FloatArray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        f0 = np.asarray(self.f0_hz, dtype=float)
        if times.ndim != 1 or times.shape != f0.shape:
            raise ParameterError("times and f0_hz must be 1-D arrays of equal length")
        if times.size == 0:
            raise EmptyInputError("Pitch trace has no frames")
        if self.hop <= 0:
            raise ParameterError(f"Hop must be positive, got {self.hop}")
        if times.size > 1:
            steps = np.diff(times)
            if np.any(steps <= 0):
                raise ParameterError("Trace times must strictly increase")
            if np.any(np.abs(steps - self.hop) > TRACE_HOP_ATOL_SECONDS):
                raise ParameterError("Trace times must follow a constant hop")
        f0 = np.where(f0 > 0, f0, np.nan)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "f0_hz", f0)
        object.__setattr__(self, "cents", hz_array_to_cents(f0))

    @classmethod
    def from_cents(
        cls, cents: npt.ArrayLike, hop: float, start: float = 0.0
    ) -> "PitchTrace":
        """Build a trace from absolute cents (NaN = unvoiced)."""
        values = np.asarray(cents, dtype=float)
        f0 = 440.0 * 2.0 ** ((values - 6900.0) / 1200.0)
        times = start + hop * np.arange(values.size)
        return cls(times, f0, hop)

    def voiced_filtered(
        self, min_f0_hz: float = DEFAULT_MIN_F0_HZ, max_f0_hz: float = DEFAULT_MAX_F0_HZ
    ) -> "PitchTrace":
        """Copy with frames outside [min_f0_hz, max_f0_hz] marked unvoiced."""
        f0 = self.f0_hz.copy()
        f0[(f0 < min_f0_hz) | (f0 > max_f0_hz)] = np.nan
        return PitchTrace(self.times, f0, self.hop)

    @property
    def voiced(self) -> npt.NDArray[np.bool_]:
        return ~np.isnan(self.f0_hz)

    @property
    def n_frames(self) -> int:
        return int(self.times.size)

    @property
    def n_voiced(self) -> int:
        return int(self.voiced.sum())


@dataclass(frozen=True, eq=False)
class Histogram:
    """
    Occurrence counts over cents. Bin k covers
    [origin + k*bin_width, origin + (k+1)*bin_width).
    """

    bin_width: float
    origin: float
    counts: FloatArray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=float)
        if self.bin_width <= 0:
            raise ParameterError(f"bin_width must be positive, got {self.bin_width}")
        if np.any(counts < 0):
            raise ParameterError("Histogram counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def n_bins(self) -> int:
        return int(self.counts.size)

    @property
    def centers(self) -> FloatArray:
        return self.origin + (np.arange(self.n_bins) + 0.5) * self.bin_width

    @property
    def edges(self) -> FloatArray:
        return self.origin + np.arange(self.n_bins + 1) * self.bin_width

    @property
    def total_mass(self) -> float:
        return float(self.counts.sum())

    @property
    def span(self) -> tuple[float, float]:
        return self.origin, self.origin + self.n_bins * self.bin_width

    def bin_of(self, cents: float) -> int:
        return int(np.floor((cents - self.origin) / self.bin_width))

    def scaled(self, factor: float) -> "Histogram":
        return Histogram(self.bin_width, self.origin, self.counts * factor)


def histogram_from_cents(
    cents: npt.ArrayLike,
    bin_width: float = DEFAULT_BIN_WIDTH,
    padding_bins: int = DEFAULT_SMOOTHING_WINDOW,
    weights: npt.ArrayLike | None = None,
) -> Histogram:
    """
    Count cents values into bins centered on multiples of bin_width.

    NaN values are ignored. The bin range spans the data padded by
    padding_bins on each side. With weights, each value adds its weight
    instead of one.
    """
    if bin_width <= 0:
        raise ParameterError(f"bin_width must be positive, got {bin_width}")
    values = np.asarray(cents, dtype=float)
    keep = ~np.isnan(values)
    values = values[keep]
    if weights is not None:
        weights = np.asarray(weights, dtype=float)[keep]
        if np.any(weights < 0):
            raise ParameterError("Histogram weights must be non-negative")
    if values.size == 0:
        raise EmptyInputError("No voiced frames to build a histogram from")

    first = int(np.round(values.min() / bin_width)) - padding_bins
    last = int(np.round(values.max() / bin_width)) + padding_bins
    origin = (first - 0.5) * bin_width
    index = np.floor((values - origin) / bin_width).astype(np.int64)
    n_bins = last - first + 1
    index = np.clip(index, 0, n_bins - 1)
    counts = np.bincount(index, weights=weights, minlength=n_bins).astype(float)
    return Histogram(bin_width, origin, counts)


def build_histogram(
    trace: PitchTrace,
    bin_width: float = DEFAULT_BIN_WIDTH,
    padding_bins: int = DEFAULT_SMOOTHING_WINDOW,
) -> Histogram:
    """
    Raw pitch histogram of a trace: one count per voiced frame.

    Raises:
        EmptyInputError: If the trace has no voiced frames
    """
    histogram = histogram_from_cents(trace.cents, bin_width, padding_bins)
    logger.debug(
        f"Histogram of {trace.n_voiced} voiced frames over {histogram.n_bins} bins"
    )
    return histogram


def smooth(h: Histogram, window: int = DEFAULT_SMOOTHING_WINDOW) -> Histogram:
    """
    Centered moving average with reflected edges.

    Reflection at the edges keeps the total mass unchanged.
    """
    if window < 1 or window % 2 == 0:
        raise ParameterError(f"Smoothing window must be odd and >= 1, got {window}")
    if window == 1:
        return Histogram(h.bin_width, h.origin, h.counts.copy())
    smoothed = uniform_filter1d(h.counts, size=window, mode="reflect")
    # uniform_filter1d can leave -1e-16 style residue next to empty bins
    return Histogram(h.bin_width, h.origin, np.clip(smoothed, 0.0, None))


def derivative(h: Histogram) -> FloatArray:
    """Central differences in counts per bin, one-sided at the edges."""
    if h.n_bins < 2:
        raise ParameterError("Derivative needs at least two bins")
    return np.gradient(h.counts)
