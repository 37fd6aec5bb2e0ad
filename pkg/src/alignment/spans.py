# spans.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.alignment.dtw import AlignmentPath
from src.alignment.expansion import Transcription, expand_transcription
from src.constants import DEFAULT_BIN_WIDTH, DEFAULT_SMOOTHING_WINDOW
from src.exceptions import ParameterError
from src.histogram.histogram import Histogram, PitchTrace, histogram_from_cents
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NoteSpan:
    """Half-open range of trace frames assigned to one transcription note."""

    index: int
    note: QuartertoneNote
    label: str
    start: int
    stop: int

    @property
    def n_frames(self) -> int:
        return self.stop - self.start


def frame_assignment(path: AlignmentPath, note_of_frame: npt.NDArray[np.int64]) -> np.ndarray:
    """
    Note index per trace frame by majority over its matched reference frames.

    Ties go to the earlier note.
    """
    if path.n_reference != note_of_frame.size:
        raise ParameterError(
            f"Path covers {path.n_reference} reference frames, "
            f"expansion has {note_of_frame.size}"
        )
    frames = path.pairs[:, 0]
    notes = note_of_frame[path.pairs[:, 1]]

    # runs of identical (frame, note) along the path
    boundary = np.flatnonzero((np.diff(frames) != 0) | (np.diff(notes) != 0)) + 1
    starts = np.concatenate(([0], boundary))
    lengths = np.diff(np.concatenate((starts, [frames.size])))
    run_frame = frames[starts]
    run_note = notes[starts]

    order = np.lexsort((run_note, -lengths, run_frame))
    first = np.concatenate(([True], np.diff(run_frame[order]) != 0))
    chosen = order[first]
    assignment = np.empty(path.n_trace, dtype=np.int64)
    assignment[run_frame[chosen]] = run_note[chosen]
    return assignment


def note_spans_from_path(path: AlignmentPath, t: Transcription) -> list[NoteSpan]:
    """
    Trace frames belonging to each note of the transcription.

    The path's reference side must be the expansion of t to path.n_reference
    frames. Spans cover every trace frame, in note order; a note that wins no
    frame gets an empty span.
    """
    expansion = expand_transcription(t, path.n_reference)
    assignment = frame_assignment(path, expansion.note_of_frame)
    indices = np.arange(len(t))
    starts = np.searchsorted(assignment, indices, side="left")
    stops = np.searchsorted(assignment, indices, side="right")
    spans = [
        NoteSpan(
            index=int(k),
            note=item.note,
            label=item.display_label,
            start=int(a),
            stop=int(b),
        )
        for k, item, a, b in zip(indices, t.notes, starts, stops, strict=True)
    ]
    empty = sum(span.n_frames == 0 for span in spans)
    if empty:
        logger.warning(f"{empty} of {len(spans)} notes received no trace frames")
    return spans


def note_histograms(
    trace: PitchTrace,
    spans: Sequence[NoteSpan],
    bin_width: float = DEFAULT_BIN_WIDTH,
    padding_bins: int = DEFAULT_SMOOTHING_WINDOW,
) -> list[tuple[QuartertoneNote, Histogram]]:
    """
    One histogram per distinct note over all of its occurrences.

    Unvoiced frames are skipped; notes without a voiced frame are left out.
    Sorted by note pitch.
    """
    frames: dict[QuartertoneNote, list[np.ndarray]] = {}
    for span in spans:
        frames.setdefault(span.note, []).append(trace.cents[span.start : span.stop])

    histograms = []
    for note in sorted(frames):
        cents = np.concatenate(frames[note])
        cents = cents[~np.isnan(cents)]
        if cents.size == 0:
            logger.debug(f"Note {note.label} has no voiced frames")
            continue
        histograms.append((note, histogram_from_cents(cents, bin_width, padding_bins)))
    return histograms
