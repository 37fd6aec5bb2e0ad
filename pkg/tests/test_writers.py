import json

import pandas as pd
import pytest

from src.analysis import IntervalReport, IntervalStatistic, VarianceGroup
from src.config_validation import RunConfig
from src.pitch import QuartertoneNote
from src.services import analyze_piece, build_report_schema
from src.writers import file_stem, write_corpus_outputs, write_piece_outputs


@pytest.fixture
def bundle(shur_input, run_config):
    return analyze_piece(shur_input, run_config).bundle


@pytest.mark.parametrize(
    "name, stem",
    [("shur-0", "shur-0"), ("darāmad 2", "daramad_2"), ("Fārābi-II", "Farabi-II"), ("a/b", "a_b")],
)
def test_file_stem(name, stem):
    assert file_stem(name) == stem


def test_piece_outputs(bundle, tmp_path):
    piece_dir = write_piece_outputs(bundle, tmp_path)
    assert piece_dir == tmp_path / "shur-0"
    for name in ("bundle.json", "peaks.json", "histogram.csv", "alignment.csv", "evaluation.json"):
        assert (piece_dir / name).is_file(), name

    peaks = json.loads((piece_dir / "peaks.json").read_text(encoding="utf-8"))
    assert peaks["piece_id"] == "shur-0"
    assert len(peaks["mountains"]) == len(bundle.mountains)


def test_histogram_csv(bundle, tmp_path):
    frame = pd.read_csv(write_piece_outputs(bundle, tmp_path) / "histogram.csv")
    assert list(frame.columns) == [
        "bin_center_cents", "raw_count", "smoothed_count", "mountain", "is_peak"
    ]
    assert len(frame) == len(bundle.histogram.raw_counts)
    assert frame["is_peak"].sum() == len(bundle.mountains)
    assert set(frame["mountain"]) == {-1, *range(len(bundle.mountains))}
    assert frame["raw_count"].sum() == pytest.approx(bundle.n_voiced)


def test_alignment_csv(bundle, tmp_path):
    frame = pd.read_csv(write_piece_outputs(bundle, tmp_path) / "alignment.csv", keep_default_na=False)
    assert list(frame.columns) == ["trace_frame", "time_sec", "note_index", "note_label"]
    assert len(frame) == bundle.n_frames
    assert frame["note_index"].is_monotonic_increasing
    assert frame["note_label"].iloc[0] == "C4"


def test_note_histogram_files(bundle, tmp_path):
    notes_dir = write_piece_outputs(bundle, tmp_path) / "notes"
    assert {p.stem for p in notes_dir.glob("*.csv")} == {h.note for h in bundle.note_histograms}
    ek = pd.read_csv(notes_dir / "Ek4.csv")
    assert list(ek.columns) == ["bin_center_cents", "count"]


def test_evaluation_is_optional(bundle, tmp_path):
    piece_dir = write_piece_outputs(bundle.model_copy(update={"evaluation": None}), tmp_path)
    assert not (piece_dir / "evaluation.json").exists()


def test_corpus_outputs(tmp_path):
    steps = [(120, 124, 210.0), (124, 127, 137.0), (127, 130, 151.0)]
    report = IntervalReport(
        intervals=tuple(
            IntervalStatistic(QuartertoneNote(lo), QuartertoneNote(up), 3, mean, 6.0, VarianceGroup.LOW)
            for lo, up, mean in steps
        ),
        piece_ids=("a", "b", "c"),
        n_measurements=9,
    )
    schema = build_report_schema(report, RunConfig())
    paths = write_corpus_outputs(schema, tmp_path)

    assert [p.name for p in paths] == [
        "report.json", "report.csv", "comparison_Farhat.csv", "comparison_Talai.csv",
        "comparison_Vaziri.csv",
    ]
    table = pd.read_csv(tmp_path / "report.csv")
    assert table["interval"].tolist() == ["C4-D4", "D4-Ek4", "Ek4-F4"]
    assert table["group"].unique().tolist() == ["low-variance"]
    vaziri = pd.read_csv(tmp_path / "comparison_Vaziri.csv")
    assert vaziri["degree"].tolist() == ["C", "D", "Ek", "F"]
    assert vaziri["delta"].tolist() == pytest.approx([0, 10, -3, -2])
