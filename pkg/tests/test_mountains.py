import numpy as np
import pytest

from src.exceptions import ParameterError
from src.histogram import (
    Histogram,
    MountainRange,
    find_mountain_ranges,
    find_shahed,
    mountain_area,
    smooth,
)
from tests.synthetic import gaussian_histogram


def test_flat_zero_histogram():
    assert find_mountain_ranges(Histogram(1.0, 0.0, np.zeros(40))) == []


def test_single_gaussian():
    ranges = find_mountain_ranges(gaussian_histogram([6123], [10]))
    assert len(ranges) == 1
    assert ranges[0].contains(6123)
    assert ranges[0].peak_bin == pytest.approx(6123)


def test_two_gaussians_split_at_minimum():
    h = gaussian_histogram([6050, 6250], [1, 1], sd=40, lo=5900, hi=6400)
    ranges = find_mountain_ranges(h)
    assert len(ranges) == 2
    valley = h.centers[np.argmin(np.where((h.centers > 6050) & (h.centers < 6250), h.counts, np.inf))]
    assert abs(ranges[0].hi - valley) <= 2
    assert ranges[0].hi == ranges[1].lo


def test_low_bump_merges_into_neighbour():
    h = gaussian_histogram([6100], [1], sd=10)
    x = h.centers
    bump = Histogram(h.bin_width, h.origin, h.counts + 0.03 * np.exp(-((x - 6140) ** 2) / (2 * 3.0**2)))
    ranges = find_mountain_ranges(bump, min_prominence=0.05)
    assert len(ranges) == 1
    assert ranges[0].contains(6140)


def test_light_mountain_is_discarded():
    x = np.arange(5900, 6401, dtype=float)
    counts = np.exp(-((x - 6100) ** 2) / 200.0) + 0.2 * np.exp(-((x - 6300) ** 2) / 0.72)
    ranges = find_mountain_ranges(Histogram(1.0, 5899.5, counts), min_mass=0.02)
    assert len(ranges) == 1
    assert ranges[0].contains(6100)


def test_area_of_whole_histogram():
    h = gaussian_histogram([6100, 6300], [1, 2])
    lo, hi = h.span
    whole = MountainRange(lo=lo, hi=hi, peak_bin=6300.0, area=h.total_mass)
    assert mountain_area(h, whole) == pytest.approx(h.total_mass)


def test_area_of_range_without_bins():
    h = gaussian_histogram([6100], [1])
    with pytest.raises(ParameterError):
        mountain_area(h, MountainRange(lo=6000.6, hi=6000.9, peak_bin=6000.7, area=1.0))


def test_area_outside_span():
    h = gaussian_histogram([6100], [1])
    with pytest.raises(ParameterError):
        mountain_area(h, MountainRange(lo=7000, hi=7010, peak_bin=7005, area=1.0))


def test_shahed_of_single_range():
    h = gaussian_histogram([6100], [1])
    ranges = find_mountain_ranges(h)
    assert find_shahed(h, ranges) == ranges[0]


def test_shahed_tie_goes_to_lower_mountain():
    h = gaussian_histogram([6000, 6200], [1, 1], sd=6, lo=5900, hi=6300)
    ranges = find_mountain_ranges(h)
    assert len(ranges) == 2
    assert find_shahed(h, ranges).contains(6000)


def test_shahed_of_nothing():
    with pytest.raises(ParameterError):
        find_shahed(gaussian_histogram([6100], [1]), [])


def test_range_peak_must_be_inside():
    with pytest.raises(ParameterError):
        MountainRange(lo=6000, hi=6010, peak_bin=6010, area=1.0)


def test_ranges_are_disjoint_and_within_mass(rng):
    for _ in range(500):
        k = int(rng.integers(1, 5))
        h = smooth(
            gaussian_histogram(
                list(rng.uniform(6000, 6300, size=k)),
                list(rng.uniform(0.1, 1.0, size=k)),
                sd=float(rng.uniform(3, 15)),
            ),
            int(rng.choice([1, 5, 15])),
        )
        ranges = find_mountain_ranges(h)
        assert ranges
        for a, b in zip(ranges, ranges[1:], strict=False):
            assert a.hi <= b.lo
        for r in ranges:
            assert r.lo < r.peak_bin < r.hi
            assert 0 < r.area <= h.total_mass * (1 + 1e-12)
        assert sum(r.area for r in ranges) <= h.total_mass * (1 + 1e-12)
