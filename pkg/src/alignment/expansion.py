# expansion.py
import logging
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.constants import (
    DEFAULT_BIN_WIDTH,
    DEFAULT_SMOOTHING_WINDOW,
    TRANSCRIPTION_MIN_DURATION_FRACTION,
)
from src.exceptions import EmptyInputError, ParameterError
from src.histogram.histogram import Histogram, histogram_from_cents
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TranscribedNote:
    note: QuartertoneNote
    duration: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise ParameterError(f"Note duration must be positive, got {self.duration}")

    @property
    def display_label(self) -> str:
        return self.label or self.note.label


@dataclass(frozen=True)
class Transcription:
    """Ordered notes of a piece at quartertone resolution."""

    notes: tuple[TranscribedNote, ...]

    def __post_init__(self) -> None:
        if not self.notes:
            raise EmptyInputError("Transcription has no notes")
        object.__setattr__(self, "notes", tuple(self.notes))

    @classmethod
    def from_pairs(
        cls, pairs: list[tuple[int, float]] | list[tuple[int, float, str]]
    ) -> "Transcription":
        """Build from (doubled_midi, duration[, label]) tuples."""
        return cls(
            tuple(
                TranscribedNote(QuartertoneNote(int(item[0])), float(item[1]), *item[2:])
                for item in pairs
            )
        )

    def __len__(self) -> int:
        return len(self.notes)

    def __iter__(self) -> Iterator[TranscribedNote]:
        return iter(self.notes)

    @property
    def durations(self) -> npt.NDArray[np.float64]:
        return np.array([n.duration for n in self.notes])

    @property
    def nominal_cents(self) -> npt.NDArray[np.float64]:
        return np.array([n.note.nominal_cents for n in self.notes])

    @property
    def total_duration(self) -> float:
        return float(self.durations.sum())

    def duration_by_note(self) -> dict[QuartertoneNote, float]:
        """Total duration per distinct note, in first-appearance order."""
        totals: dict[QuartertoneNote, float] = {}
        for item in self.notes:
            totals[item.note] = totals.get(item.note, 0.0) + item.duration
        return totals


@dataclass(frozen=True, eq=False)
class ExpandedReference:
    """Frame-rate reference: nominal cents per frame and the note each frame came from."""

    cents: npt.NDArray[np.float64]
    frame_counts: npt.NDArray[np.int64]
    note_of_frame: npt.NDArray[np.int64]

    @property
    def block_starts(self) -> npt.NDArray[np.int64]:
        return np.concatenate(([0], np.cumsum(self.frame_counts)[:-1]))


def apportion(weights: npt.ArrayLike, total: int) -> npt.NDArray[np.int64]:
    """
    Largest-remainder split of total into integer parts proportional to weights.

    Each part is the floor or ceiling of its exact share; leftover units go to
    the largest remainders, earlier entries first on ties.
    """
    w = np.asarray(weights, dtype=float)
    exact = total * w / w.sum()
    base = np.floor(exact + 1e-9).astype(np.int64)
    remainder = np.maximum(exact - base, 0.0)
    extra = total - int(base.sum())
    if extra > 0:
        order = np.argsort(-remainder, kind="stable")
        base[order[:extra]] += 1
    return base


def expand_transcription(t: Transcription, total_frames: int) -> ExpandedReference:
    """
    Repeat each note's nominal cents in proportion to its duration.

    Raises:
        ParameterError: If total_frames is smaller than the number of notes
    """
    if total_frames < len(t):
        raise ParameterError(
            f"Cannot expand {len(t)} notes into {total_frames} frames"
        )
    counts = apportion(t.durations, total_frames)
    note_of_frame = np.repeat(np.arange(len(t)), counts)
    cents = t.nominal_cents[note_of_frame]
    logger.debug(f"Expanded {len(t)} notes to {total_frames} reference frames")
    return ExpandedReference(cents=cents, frame_counts=counts, note_of_frame=note_of_frame)


def transcription_histogram(
    t: Transcription,
    bin_width: float = DEFAULT_BIN_WIDTH,
    min_duration_fraction: float = TRANSCRIPTION_MIN_DURATION_FRACTION,
    padding_bins: int = DEFAULT_SMOOTHING_WINDOW,
) -> Histogram:
    """
    Duration-weighted histogram of the notated pitches.

    Notes whose total duration is below min_duration_fraction of the piece
    are left out.
    """
    totals = t.duration_by_note()
    cutoff = min_duration_fraction * t.total_duration
    kept = {note: d for note, d in totals.items() if d >= cutoff}
    dropped = len(totals) - len(kept)
    if dropped:
        logger.debug(f"Transcription histogram drops {dropped} short notes")
    return histogram_from_cents(
        [note.nominal_cents for note in kept],
        bin_width,
        padding_bins,
        weights=list(kept.values()),
    )


def transcription_shahed(t: Transcription) -> QuartertoneNote:
    """The note with the longest total duration; ties go to the earlier note."""
    totals = t.duration_by_note()
    longest = max(totals.values())
    return next(note for note, d in totals.items() if d == longest)
