import pytest

from src.exceptions import ParameterError, UnknownScaleError
from src.pitch import QuartertoneNote, reference_scale, scales_document
from src.pitch.scales import (
    FARABI_THIRD_VARIANTS,
    MARAGHI_INTERVAL_CLASSES,
    REFERENCE_SCALES,
    ReferenceScale,
    ScaleDegree,
)


def test_farhat_includes_koron_degrees():
    pairs = reference_scale("Farhat").as_pairs()
    assert ("La k", 135.0) in pairs
    assert ("Si k", 340.0) in pairs
    assert ("Re k", 630.0) in pairs


def test_farabi_second_type():
    assert reference_scale("Fārābi-II").cents == [0, 204, 355, 498, 702, 853, 996, 1200]


def test_vaziri():
    assert reference_scale("Vaziri").cents == [0, 200, 350, 500, 700, 850, 1000, 1200]


def test_lookup_ignores_case_and_diacritics():
    assert reference_scale("talai").name == "Talāi"
    assert reference_scale("FARABI-III").name == "Fārābi-III"


def test_unknown_scale():
    with pytest.raises(UnknownScaleError):
        reference_scale("Pythagoras")


def test_missing_published_values_are_absent():
    labels = [label for label, _ in reference_scale("Talāi").as_pairs()]
    assert "La b" not in labels
    assert "Mi b" not in labels


def test_every_scale_runs_from_zero_to_octave():
    for scale in REFERENCE_SCALES.values():
        cents = scale.cents
        assert cents[0] == 0
        assert cents[-1] == 1200
        assert all(b > a for a, b in zip(cents, cents[1:], strict=False))


def test_relabel_sol_scale_onto_c():
    relabelled = dict(reference_scale("Farhat").relabel(QuartertoneNote(120)))
    assert relabelled["D"] == 205
    assert relabelled["Ek"] == 340
    assert relabelled["Ak"] == 835
    assert relabelled["Bb"] == 995
    assert relabelled["C'"] == 1200


def test_invalid_scale_is_rejected():
    with pytest.raises(ParameterError):
        ReferenceScale("broken", 0, (ScaleDegree("C", 0, 0), ScaleDegree("D", 200, 4)))


def test_scales_document_lists_every_scale():
    document = scales_document()
    assert set(document) == set(REFERENCE_SCALES)
    assert document["Vaziri"][2] == ["Ek", 350.0]


def test_historical_constants():
    assert MARAGHI_INTERVAL_CLASSES["tanini"] == pytest.approx(203.91, abs=0.01)
    assert MARAGHI_INTERVAL_CLASSES["baqieh"] == pytest.approx(90.22, abs=0.01)
    assert sorted(FARABI_THIRD_VARIANTS.values()) == [303.0, 355.0, 408.0]


def test_unnamed_table_row_keeps_its_dash():
    pairs = reference_scale("Marāghi").as_pairs()
    assert ("-", 1086.0) in pairs
    assert not any(label.startswith("Fa ") for label, _ in pairs)
    relabelled = reference_scale("Farhat").relabel(QuartertoneNote(120))
    names = [label for label, cents in relabelled if cents == 1040]
    assert len(names) == 1 and names[0] != "-"
