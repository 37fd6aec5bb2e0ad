import numpy as np
import pytest

from src.exceptions import EmptyInputError, ParameterError
from src.histogram import (
    Histogram,
    MountainRange,
    PitchTrace,
    build_histogram,
    derivative,
    find_mountain_ranges,
    find_shahed,
    histogram_from_cents,
    mountain_area,
    smooth,
)
from tests.synthetic import HOP, gaussian_histogram, weyl_uniform


def two_note_trace(spread_low: float = 5.0, spread_high: float = 5.0) -> PitchTrace:
    low = 6000 + spread_low * (2 * weyl_uniform(600) - 1)
    high = 6204 + spread_high * (2 * weyl_uniform(400, start=600) - 1)
    return PitchTrace.from_cents(np.concatenate([low, high]), HOP)


def range_height(h: Histogram, r: MountainRange) -> float:
    """Tallest count among the bins inside the range."""
    inside = (h.centers >= r.lo) & (h.centers <= r.hi)
    return float(h.counts[inside].max())


class TestPitchTrace:
    def test_non_positive_f0_is_unvoiced(self):
        trace = PitchTrace(np.arange(3) * HOP, np.array([440.0, 0.0, -1.0]), HOP)
        assert trace.n_frames == 3
        assert trace.n_voiced == 1
        assert np.isnan(trace.cents[1])

    def test_uneven_hop_is_rejected(self):
        with pytest.raises(ParameterError):
            PitchTrace(np.array([0.0, 0.01, 0.03]), np.full(3, 440.0), 0.01)

    def test_band_filter_marks_frames_unvoiced(self):
        trace = PitchTrace(np.arange(3) * HOP, np.array([30.0, 440.0, 2500.0]), HOP)
        filtered = trace.voiced_filtered(50, 2000)
        assert filtered.voiced.tolist() == [False, True, False]
        assert filtered.n_frames == 3


class TestBuildHistogram:
    def test_all_unvoiced_trace(self):
        trace = PitchTrace(np.arange(4) * HOP, np.zeros(4), HOP)
        with pytest.raises(EmptyInputError):
            build_histogram(trace)

    def test_constant_trace_fills_one_bin(self):
        trace = PitchTrace.from_cents(np.full(10, 6900.0), HOP)
        h = build_histogram(trace, bin_width=1)
        assert h.total_mass == 10
        assert np.count_nonzero(h.counts) == 1
        assert h.centers[np.argmax(h.counts)] == pytest.approx(6900)

    def test_mass_equals_voiced_frames(self):
        cents = np.array([6000.2, np.nan, 6001.7, 6050.0, np.nan])
        h = build_histogram(PitchTrace.from_cents(cents, HOP), bin_width=1)
        assert h.total_mass == 3
        assert np.all(h.counts >= 0)

    def test_two_note_trace_masses(self):
        trace = two_note_trace()
        raw = build_histogram(trace, bin_width=1)
        ranges = find_mountain_ranges(smooth(raw, 15))
        assert len(ranges) == 2
        assert [mountain_area(raw, r) for r in ranges] == [600, 400]

    def test_shahed_is_largest_area_not_tallest(self):
        trace = two_note_trace(spread_low=30.0, spread_high=3.0)
        raw = build_histogram(trace, bin_width=1)
        smoothed = smooth(raw, 15)
        ranges = find_mountain_ranges(smoothed)
        assert len(ranges) == 2
        # the narrow 400-frame mountain is taller, raw or smoothed
        for h in (raw, smoothed):
            tallest = max(ranges, key=lambda r: range_height(h, r))
            assert tallest.contains(6204)
        assert [mountain_area(raw, r) for r in ranges] == [600, 400]
        assert find_shahed(raw, ranges).contains(6000)

    def test_weights_replace_counts(self):
        h = histogram_from_cents([6000.0, 6100.0], bin_width=1, padding_bins=0, weights=[2.5, 0.5])
        assert h.total_mass == pytest.approx(3.0)
        assert h.counts[0] == pytest.approx(2.5)

    def test_bins_are_centered_on_multiples_of_width(self):
        h = histogram_from_cents([6000.0, 6010.0], bin_width=5, padding_bins=2)
        assert np.allclose(np.mod(h.centers, 5), 0)
        assert h.bin_of(6000.0) == 2


class TestSmooth:
    def test_window_one_is_identity(self):
        h = gaussian_histogram([6100], [10])
        assert np.array_equal(smooth(h, 1).counts, h.counts)

    def test_constant_is_preserved(self):
        h = Histogram(1.0, 0.0, np.full(50, 3.0))
        assert np.allclose(smooth(h, 15).counts, 3.0)

    def test_impulse_spreads_evenly(self):
        counts = np.zeros(101)
        counts[50] = 15
        smoothed = smooth(Histogram(1.0, 0.0, counts), 15).counts
        assert np.allclose(smoothed[43:58], 1.0)
        assert np.allclose(smoothed[:43], 0.0)
        assert np.allclose(smoothed[58:], 0.0)

    def test_even_window_is_rejected(self):
        with pytest.raises(ParameterError):
            smooth(gaussian_histogram([6100], [1]), 4)

    def test_mass_is_conserved(self, rng):
        for _ in range(500):
            counts = rng.integers(0, 20, size=int(rng.integers(40, 200))).astype(float)
            window = int(rng.choice([1, 3, 5, 15, 31]))
            smoothed = smooth(Histogram(1.0, 0.0, counts), window)
            assert smoothed.total_mass == pytest.approx(counts.sum(), rel=1e-9, abs=1e-9)
            assert np.all(smoothed.counts >= 0)


class TestDerivative:
    def test_constant(self):
        assert np.allclose(derivative(Histogram(1.0, 0.0, np.full(10, 4.0))), 0.0)

    def test_ramp(self):
        slope = derivative(Histogram(1.0, 0.0, np.arange(10, dtype=float)))
        assert np.all(slope[1:-1] > 0)

    def test_single_mountain_has_one_turning_point(self):
        h = smooth(gaussian_histogram([6100], [50], sd=10, lo=6000, hi=6200), 15)
        signs = np.sign(derivative(h))
        signs = signs[signs != 0]
        turns = np.flatnonzero((signs[:-1] > 0) & (signs[1:] < 0))
        assert turns.size == 1
        assert np.flatnonzero((signs[:-1] < 0) & (signs[1:] > 0)).size == 0

    def test_needs_two_bins(self):
        with pytest.raises(ParameterError):
            derivative(Histogram(1.0, 0.0, np.ones(1)))
