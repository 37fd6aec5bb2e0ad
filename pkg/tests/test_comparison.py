import pytest

from src.analysis import (
    IntervalReport,
    IntervalStatistic,
    VarianceGroup,
    compare_to_reference,
    scale_rows,
)
from src.exceptions import ParameterError, ScaleChainGapError
from src.pitch import QuartertoneNote
from src.pitch.scales import reference_scale
from tests.synthetic import SHUR_SCALE

C4 = QuartertoneNote(120)


def report_from_means(means: list[tuple[int, int, float]]) -> IntervalReport:
    return IntervalReport(
        intervals=tuple(
            IntervalStatistic(
                QuartertoneNote(lo), QuartertoneNote(up), 15, mean, 0.0, VarianceGroup.UNGROUPED
            )
            for lo, up, mean in means
        )
    )


def shur_report() -> IntervalReport:
    steps = zip(SHUR_SCALE, SHUR_SCALE[1:], strict=False)
    return report_from_means([(lo, up, b - a) for (lo, a), (up, b) in steps])


def test_rows_accumulate_mean_intervals():
    report = report_from_means([(120, 124, 210.0), (124, 127, 137.0), (127, 130, 151.0)])
    rows = scale_rows(report, tonic=C4)
    assert [r.label for r in rows] == ["C", "D", "Ek", "F"]
    assert [r.cents for r in rows] == pytest.approx([0, 210, 347, 498])


def test_tonic_defaults_to_lowest_note():
    rows = scale_rows(report_from_means([(124, 127, 137.0), (127, 130, 151.0)]))
    assert [r.label for r in rows] == ["D", "Ek", "F"]
    assert rows[-1].cents == pytest.approx(288)


def test_upper_octave_is_primed():
    rows = scale_rows(shur_report(), tonic=C4)
    assert rows[-1].label == "C'"
    assert rows[-1].cents == pytest.approx(1190)


def test_gap_in_chain():
    report = report_from_means([(120, 124, 210.0), (127, 130, 151.0)])
    with pytest.raises(ScaleChainGapError) as excinfo:
        scale_rows(report, tonic=C4)
    assert excinfo.value.missing_degree == "Ek"


def test_empty_report_without_tonic():
    with pytest.raises(ParameterError):
        scale_rows(IntervalReport(intervals=()))


def test_measured_shur_against_farhat():
    comparison = compare_to_reference(scale_rows(shur_report(), tonic=C4), reference_scale("Farhat"))
    assert [d.label for d in comparison.deltas] == ["C", "D", "Ek", "F", "G", "Ak", "Bb", "C'"]
    assert [d.delta for d in comparison.deltas] == pytest.approx([0, 5, 7, -2, -4, 1, -10, -10])
    assert comparison.unmatched_measured == ()
    assert "Db" in comparison.unmatched_reference


def test_measured_shur_against_vaziri():
    comparison = compare_to_reference(scale_rows(shur_report(), tonic=C4), reference_scale("Vaziri"))
    deltas = {d.label: d.delta for d in comparison.deltas}
    assert deltas["Ak"] == pytest.approx(-14)
    assert deltas["D"] == pytest.approx(10)
    assert comparison.unmatched_reference == ()


def test_comparison_frame():
    comparison = compare_to_reference(scale_rows(shur_report(), tonic=C4), reference_scale("Talai"))
    frame = comparison.to_frame()
    assert list(frame.columns) == ["degree", "measured", "reference", "delta"]
    assert frame.loc[frame["degree"] == "Ek", "reference"].item() == 350


def test_nothing_to_compare():
    with pytest.raises(ParameterError):
        compare_to_reference([], reference_scale("Vaziri"))
