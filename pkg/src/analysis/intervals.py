# intervals.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass

from src.constants import NOTE_PEAK_SANITY_CENTS
from src.exceptions import ParameterError
from src.peakfit.models import Typology
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NotePeak:
    """
    Performed pitch of one note in one piece.

    peak_cents is the raw audio position; calibrated_cents removes the
    piece's offset. source says whether the peak came from the audio
    histogram or from the note's own histogram.
    """

    note: QuartertoneNote
    peak_cents: float
    mass: float
    piece_id: str
    typology: Typology | None = None
    offset: float = 0.0
    low_confidence: bool = False
    source: str = "audio"

    def __post_init__(self) -> None:
        if not self.mass > 0:
            raise ParameterError(f"Peak of {self.note.label} has no mass")

    @property
    def calibrated_cents(self) -> float:
        return self.peak_cents - self.offset

    @property
    def deviation(self) -> float:
        """Calibrated distance from the notated pitch."""
        return self.calibrated_cents - self.note.nominal_cents

    def within_sanity_bound(self, bound: float = NOTE_PEAK_SANITY_CENTS) -> bool:
        return abs(self.deviation) < bound


@dataclass(frozen=True)
class IntervalMeasurement:
    lower_note: QuartertoneNote
    upper_note: QuartertoneNote
    size: float
    piece_id: str

    def __post_init__(self) -> None:
        if self.upper_note.doubled_midi <= self.lower_note.doubled_midi:
            raise ParameterError(
                f"Interval {self.lower_note.label}-{self.upper_note.label} is not ascending"
            )
        if not self.size > 0:
            raise ParameterError(
                f"Interval {self.lower_note.label}-{self.upper_note.label} "
                f"has non-positive size {self.size}"
            )

    @property
    def key(self) -> tuple[QuartertoneNote, QuartertoneNote]:
        return self.lower_note, self.upper_note

    @property
    def name(self) -> str:
        return f"{self.lower_note.label}-{self.upper_note.label}"


def extract_intervals(peaks: Sequence[NotePeak]) -> list[IntervalMeasurement]:
    """
    Differences between the peaks of consecutive notes present in a piece.

    Degrees missing from the piece produce no measurement; an inverted pair
    (upper peak at or below the lower one) is skipped with a warning.

    Raises:
        ParameterError: Fewer than two peaks, or two peaks for the same note
    """
    if len(peaks) < 2:
        raise ParameterError(f"Need at least two note peaks, got {len(peaks)}")
    ordered = sorted(peaks, key=lambda p: p.note)
    for a, b in zip(ordered, ordered[1:], strict=False):
        if a.note == b.note:
            raise ParameterError(f"Duplicate peak for note {a.note.label}")

    measurements = []
    for lower, upper in zip(ordered, ordered[1:], strict=False):
        size = upper.peak_cents - lower.peak_cents
        if size <= 0:
            logger.warning(
                f"[{lower.piece_id}] Skipping {lower.note.label}-{upper.note.label}: "
                f"peaks inverted ({size:.1f} cents)"
            )
            continue
        measurements.append(
            IntervalMeasurement(lower.note, upper.note, size, lower.piece_id)
        )
    return measurements
