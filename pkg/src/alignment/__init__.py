from src.alignment.dtw import AlignmentPath, dtw_align
from src.alignment.evaluation import AlignmentEvaluation, evaluate_alignment
from src.alignment.expansion import (
    ExpandedReference,
    TranscribedNote,
    Transcription,
    apportion,
    expand_transcription,
    transcription_histogram,
    transcription_shahed,
)
from src.alignment.spans import NoteSpan, note_histograms, note_spans_from_path

__all__ = [
    "AlignmentEvaluation",
    "AlignmentPath",
    "ExpandedReference",
    "NoteSpan",
    "TranscribedNote",
    "Transcription",
    "apportion",
    "dtw_align",
    "evaluate_alignment",
    "expand_transcription",
    "note_histograms",
    "note_spans_from_path",
    "transcription_histogram",
    "transcription_shahed",
]
