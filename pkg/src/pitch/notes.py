# notes.py
import re
from dataclasses import dataclass, field

from src.constants import (
    CENTS_PER_QUARTERTONE,
    MAX_DOUBLED_MIDI,
    PITCH_CLASS_NAMES,
    QUARTERTONES_PER_OCTAVE,
)
from src.exceptions import PitchDomainError

_LABEL_PATTERN = re.compile(r"^([A-G](?:#|b|k|s)?)(-?\d+)$")


def pitch_class_name(step: int) -> str:
    """Quartertone pitch-class name for a doubled MIDI number (or step)."""
    return PITCH_CLASS_NAMES[step % QUARTERTONES_PER_OCTAVE]


@dataclass(frozen=True, order=True)
class QuartertoneNote:
    """
    A transcription pitch at quartertone resolution.

    doubled_midi is the MIDI number times two, so one unit is 50 cents and
    C4 (MIDI 60) is 120.
    """

    doubled_midi: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.doubled_midi <= MAX_DOUBLED_MIDI:
            raise PitchDomainError(
                f"doubled_midi must be in [0, {MAX_DOUBLED_MIDI}], got {self.doubled_midi}"
            )
        if not self.name:
            object.__setattr__(self, "name", pitch_class_name(self.doubled_midi))

    @property
    def nominal_cents(self) -> float:
        return CENTS_PER_QUARTERTONE * self.doubled_midi

    @property
    def octave(self) -> int:
        return self.doubled_midi // QUARTERTONES_PER_OCTAVE - 1

    @property
    def label(self) -> str:
        """Pitch-class name with octave, e.g. Ek4."""
        return f"{pitch_class_name(self.doubled_midi)}{self.octave}"

    @classmethod
    def from_label(cls, label: str) -> "QuartertoneNote":
        """Parse labels such as C4, Ek4 or F#3."""
        match = _LABEL_PATTERN.match(label.strip())
        if not match or match.group(1) not in PITCH_CLASS_NAMES:
            raise PitchDomainError(f"Cannot parse note label '{label}'")
        pitch_class = PITCH_CLASS_NAMES.index(match.group(1))
        octave = int(match.group(2))
        return cls((octave + 1) * QUARTERTONES_PER_OCTAVE + pitch_class)

    def __str__(self) -> str:
        return self.label


def degree_label(note: QuartertoneNote, tonic: QuartertoneNote) -> str:
    """
    Tonic-relative degree label: the pitch-class name, primed once per octave
    above the tonic (C, D, ..., C').
    """
    steps = note.doubled_midi - tonic.doubled_midi
    octaves = max(steps, 0) // QUARTERTONES_PER_OCTAVE
    return pitch_class_name(note.doubled_midi) + "'" * octaves
