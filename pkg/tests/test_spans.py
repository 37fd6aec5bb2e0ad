import numpy as np
import pytest

from src.alignment import (
    AlignmentPath,
    NoteSpan,
    Transcription,
    dtw_align,
    expand_transcription,
    note_histograms,
    note_spans_from_path,
)
from src.alignment.spans import frame_assignment
from src.exceptions import ParameterError
from src.histogram import PitchTrace
from src.pitch import QuartertoneNote
from tests.synthetic import HOP

TWO_NOTES = Transcription.from_pairs([(120, 1.0), (124, 1.0)])


def spans_of(pairs: list[tuple[int, int]], t: Transcription) -> list[tuple[int, int]]:
    path = AlignmentPath(np.array(pairs), 0.0)
    return [(s.start, s.stop) for s in note_spans_from_path(path, t)]


def test_diagonal_path():
    assert spans_of([(i, i) for i in range(10)], TWO_NOTES) == [(0, 5), (5, 10)]


def test_horizontal_stretch_moves_boundary():
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 6), (7, 7)]
    # frame 3 sees one reference frame of the first note and two of the second
    assert spans_of(pairs, TWO_NOTES) == [(0, 3), (3, 8)]


def test_split_frame_goes_to_earlier_note():
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
    assert spans_of(pairs, TWO_NOTES) == [(0, 4), (4, 7)]


def test_single_note_takes_every_frame():
    t = Transcription.from_pairs([(127, 2.0)])
    pairs = [(0, 0), (1, 0), (2, 1), (3, 2), (3, 3)]
    assert spans_of(pairs, t) == [(0, 4)]


def test_note_that_wins_no_frame_gets_empty_span():
    t = Transcription.from_pairs([(120, 1.0), (122, 1.0), (124, 1.0)])
    # one trace frame per note pair is not enough for all three
    path = dtw_align([6000.0, 6200.0], expand_transcription(t, 3).cents)
    spans = note_spans_from_path(path, t)
    assert sum(s.n_frames for s in spans) == 2
    assert [s.index for s in spans] == [0, 1, 2]


def test_frame_assignment_rejects_foreign_expansion():
    path = AlignmentPath(np.array([(i, i) for i in range(4)]), 0.0)
    with pytest.raises(ParameterError):
        frame_assignment(path, np.zeros(6, dtype=np.int64))


def make_spans(notes: list[int], lengths: list[int]) -> list[NoteSpan]:
    spans = []
    start = 0
    for k, (midi, length) in enumerate(zip(notes, lengths, strict=True)):
        note = QuartertoneNote(midi)
        spans.append(NoteSpan(k, note, note.label, start, start + length))
        start += length
    return spans


def test_note_histograms_at_nominal_pitch():
    trace = PitchTrace.from_cents([6000.0] * 5 + [6200.0] * 5, HOP)
    histograms = note_histograms(trace, make_spans([120, 124], [5, 5]), bin_width=1)
    assert [note.label for note, _ in histograms] == ["C4", "D4"]
    for note, h in histograms:
        assert np.count_nonzero(h.counts) == 1
        assert h.centers[np.argmax(h.counts)] == pytest.approx(note.nominal_cents)


def test_sharp_note_moves_only_its_histogram():
    trace = PitchTrace.from_cents([6000.0] * 5 + [6220.0] * 5, HOP)
    histograms = dict(note_histograms(trace, make_spans([120, 124], [5, 5]), bin_width=1))
    d4 = histograms[QuartertoneNote(124)]
    c4 = histograms[QuartertoneNote(120)]
    assert d4.centers[np.argmax(d4.counts)] == pytest.approx(6220)
    assert c4.centers[np.argmax(c4.counts)] == pytest.approx(6000)


def test_note_histograms_partition_voiced_frames():
    cents = np.array([6000, np.nan, 6003, 6201, 6198, np.nan, 5999, 6002, 6350, 6352])
    trace = PitchTrace.from_cents(cents, HOP)
    spans = make_spans([120, 124, 120, 127], [3, 3, 2, 2])
    histograms = note_histograms(trace, spans, bin_width=1)
    assert sum(h.total_mass for _, h in histograms) == trace.n_voiced
    # both occurrences of C4 land in one histogram
    assert dict(histograms)[QuartertoneNote(120)].total_mass == 4


def test_unvoiced_note_is_left_out():
    trace = PitchTrace.from_cents([6000.0, 6000.0, np.nan, np.nan], HOP)
    histograms = note_histograms(trace, make_spans([120, 124], [2, 2]))
    assert [note.label for note, _ in histograms] == ["C4"]
