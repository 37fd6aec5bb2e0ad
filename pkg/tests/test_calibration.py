import pytest

from src.alignment import Transcription
from src.analysis import calibrate_offset
from src.histogram import MountainRange
from src.peakfit import ModelKind, PeakModel

SHUR = Transcription.from_pairs([(120, 2.0), (124, 1.0), (127, 1.5), (120, 1.0)])


def test_singer_at_nominal_pitch():
    calibration = calibrate_offset(6000.0, SHUR)
    assert calibration.offset == 0
    assert calibration.transcription_shahed.label == "C4"


def test_transposed_performance():
    calibration = calibrate_offset(6037.0, SHUR)
    assert calibration.offset == pytest.approx(37.0)
    assert calibration.corrected(6247.0) == pytest.approx(6210.0)


def test_tied_notes_pick_the_earlier_one():
    t = Transcription.from_pairs([(127, 1.0), (124, 1.0)])
    assert calibrate_offset(6350.0, t).transcription_shahed.label == "Ek4"


def test_accepts_ranges_and_fitted_peaks():
    r = MountainRange(lo=6010.5, hi=6060.5, peak_bin=6037.0, area=100.0)
    fit = PeakModel(ModelKind.QUADRATIC, {}, 6036.4, 0.1, r.lo, r.hi)
    assert calibrate_offset(r, SHUR).offset == pytest.approx(37.0)
    assert calibrate_offset(fit, SHUR).offset == pytest.approx(36.4)
    assert calibrate_offset(fit, SHUR).audio_shahed_cents == pytest.approx(6036.4)
