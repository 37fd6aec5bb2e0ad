import math

import pytest

from src.analysis import IntervalMeasurement, VarianceGroup, aggregate, variance_group
from src.exceptions import ParameterError
from src.pitch import QuartertoneNote

# interval, mean, sd as reported for the fifteen shur gushes
SHUR_STATISTICS = [
    ((120, 124), 210.0, 7.65),
    ((124, 127), 137.0, 7.79),
    ((127, 130), 151.0, 7.07),
    ((130, 134), 198.0, 11.47),
    ((134, 137), 140.0, 13.6),
    ((137, 140), 149.0, 11.4),
    ((140, 144), 205.0, 7.33),
    ((144, 148), 206.0, 5.5),
]
LOW = {"C4-D4", "D4-Ek4", "Ek4-F4", "Bb4-C5", "C5-D5"}
HIGH = {"F4-G4", "G4-Ak4", "Ak4-Bb4"}


def measure(lower: int, upper: int, size: float, piece: str = "p") -> IntervalMeasurement:
    return IntervalMeasurement(QuartertoneNote(lower), QuartertoneNote(upper), size, piece)


def pair_with_sd(lower: int, upper: int, mean: float, sd: float) -> list[IntervalMeasurement]:
    """Two samples whose sample standard deviation is sd."""
    half = sd / math.sqrt(2)
    return [measure(lower, upper, mean - half, "a"), measure(lower, upper, mean + half, "b")]


def test_published_deviations_split_into_two_groups():
    measurements = [m for (lo, up), mean, sd in SHUR_STATISTICS for m in pair_with_sd(lo, up, mean, sd)]
    report = aggregate(measurements, min_samples=2)
    groups = {s.name: s.group for s in report.intervals}
    assert {name for name, g in groups.items() if g is VarianceGroup.LOW} == LOW
    assert {name for name, g in groups.items() if g is VarianceGroup.HIGH} == HIGH
    for s, (_, mean, sd) in zip(report.intervals, SHUR_STATISTICS, strict=True):
        assert s.mean == pytest.approx(mean)
        assert s.sd == pytest.approx(sd)


@pytest.mark.parametrize(
    "sd, group",
    [(5.0, VarianceGroup.UNGROUPED), (5.5, VarianceGroup.LOW), (8.0, VarianceGroup.UNGROUPED),
     (9.5, VarianceGroup.UNGROUPED), (13.6, VarianceGroup.HIGH), (14.0, VarianceGroup.UNGROUPED)],
)
def test_group_bands_are_open(sd, group):
    assert variance_group(sd) is group


def test_identical_measurements():
    report = aggregate([measure(120, 124, 204.0, str(k)) for k in range(5)])
    (s,) = report.intervals
    assert s.sd == 0
    assert s.group is VarianceGroup.UNGROUPED


def test_two_samples():
    report = aggregate([measure(120, 124, 200.0, "a"), measure(120, 124, 210.0, "b")], min_samples=2)
    (s,) = report.intervals
    assert s.mean == pytest.approx(205)
    assert s.sd == pytest.approx(7.07, abs=0.005)


def test_single_sample_has_zero_sd():
    (s,) = aggregate([measure(120, 124, 200.0)], min_samples=1).intervals
    assert s.sd == 0
    assert s.n_samples == 1


def test_sparse_intervals_are_excluded():
    measurements = [measure(120, 124, 200.0 + k, str(k)) for k in range(3)]
    measurements.append(measure(124, 127, 140.0))
    report = aggregate(measurements, min_samples=3)
    assert [s.name for s in report.intervals] == ["C4-D4"]
    assert report.excluded == ("D4-Ek4",)
    assert report.n_measurements == 4


def test_order_does_not_matter(rng):
    measurements = [
        measure(lo, up, mean + float(rng.normal(0, sd)), f"p{k}")
        for (lo, up), mean, sd in SHUR_STATISTICS
        for k in range(15)
    ]
    expected = aggregate(measurements).to_frame()
    for _ in range(50):
        shuffled = [measurements[i] for i in rng.permutation(len(measurements))]
        assert aggregate(shuffled).to_frame().equals(expected)


def test_report_frame_columns():
    frame = aggregate([measure(120, 124, 200.0)], min_samples=1).to_frame()
    assert list(frame.columns) == ["interval", "n", "mean_cents", "sd_cents", "group"]


def test_invalid_inputs():
    with pytest.raises(ParameterError):
        aggregate([])
    with pytest.raises(ParameterError):
        aggregate([measure(120, 124, 200.0)], min_samples=0)
