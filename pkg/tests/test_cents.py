import numpy as np
import pytest

from src.exceptions import ParameterError, PitchDomainError
from src.pitch import circle_of_fifths_scale, hz_array_to_cents, hz_to_cents, ratio_to_cents
from src.pitch.cents import cents_to_hz

MARAGHI_DEGREES = [90, 180, 204, 294, 384, 408, 498, 588, 678, 702, 792, 882, 906, 996, 1086, 1176]


def test_ratio_to_cents_known_ratios():
    assert round(ratio_to_cents(256, 243), 2) == 90.22
    assert ratio_to_cents(2, 1) == 1200
    assert ratio_to_cents(9, 8) == pytest.approx(203.91, abs=0.005)


@pytest.mark.parametrize("numerator, denominator", [(0, 1), (1, 0), (-3, 2)])
def test_ratio_to_cents_rejects_non_positive_terms(numerator, denominator):
    with pytest.raises(PitchDomainError):
        ratio_to_cents(numerator, denominator)


def test_hz_to_cents_is_midi_compatible():
    assert hz_to_cents(440, 440) == 6900
    assert hz_to_cents(880, 440) == 8100
    assert hz_to_cents(261.63) == pytest.approx(6000, abs=0.1)


def test_hz_to_cents_rejects_silence():
    with pytest.raises(PitchDomainError):
        hz_to_cents(0.0)


def test_hz_array_keeps_unvoiced_frames():
    cents = hz_array_to_cents([440.0, np.nan, 880.0])
    assert cents[0] == 6900
    assert np.isnan(cents[1])
    assert cents[2] == 8100


def test_cents_round_trip(rng):
    freqs = rng.uniform(50, 2000, size=500)
    for f in freqs:
        assert cents_to_hz(hz_to_cents(f)) == pytest.approx(f, rel=1e-12)


def test_cents_are_monotone_in_frequency(rng):
    freqs = np.sort(rng.uniform(50, 2000, size=500))
    assert np.all(np.diff(hz_array_to_cents(freqs)) >= 0)


def test_circle_of_fifths_small_cases():
    assert circle_of_fifths_scale(1, 0, 702) == pytest.approx([0, 702])
    assert circle_of_fifths_scale(2, 0, 702) == pytest.approx([0, 204, 702])


def test_circle_of_fifths_contains_maraghi_degrees():
    pitches = np.array(circle_of_fifths_scale(4, 12, 702))
    for degree in MARAGHI_DEGREES:
        assert np.min(np.abs(pitches - degree)) <= 1


def test_circle_of_fifths_is_sorted_and_folded():
    pitches = circle_of_fifths_scale(6, 6)
    assert pitches == sorted(pitches)
    assert all(0 <= p < 1200 for p in pitches)
    assert pitches[0] == 0


def test_circle_of_fifths_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        circle_of_fifths_scale(-1, 0)
    with pytest.raises(ParameterError):
        circle_of_fifths_scale(1, 1, fifth=1300)
