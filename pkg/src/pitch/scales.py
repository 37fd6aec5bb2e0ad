# scales.py
"""
Built-in historical and contemporary reference scales.

Values are cents from the tonic exactly as published. The fret measurements
(Farhat, Talāi) and Marāghi's theoretical scale are stored on their native
tonic Sol with solfège labels; Vaziri and the three Fārābi scale types are
stored on C. Rows without a published value are absent, not zero.
"""

import logging
import unicodedata
from dataclasses import dataclass

from src.constants import QUARTERTONES_PER_OCTAVE
from src.exceptions import ParameterError, UnknownScaleError
from src.pitch.cents import ratio_to_cents
from src.pitch.notes import QuartertoneNote, pitch_class_name

logger = logging.getLogger(__name__)

SOL_PITCH_CLASS = 14
C_PITCH_CLASS = 0


@dataclass(frozen=True)
class ScaleDegree:
    """One degree: native label, cents from the tonic, nominal quartertone step."""

    label: str
    cents: float
    step: int


@dataclass(frozen=True)
class ReferenceScale:
    name: str
    tonic_pitch_class: int
    degrees: tuple[ScaleDegree, ...]

    def __post_init__(self) -> None:
        cents = [degree.cents for degree in self.degrees]
        if not cents or cents[0] != 0 or cents[-1] != 1200:
            raise ParameterError(f"Scale {self.name} must run from 0 to 1200 cents")
        if any(b <= a for a, b in zip(cents, cents[1:], strict=False)):
            raise ParameterError(f"Scale {self.name} degrees must strictly increase")

    @property
    def cents(self) -> list[float]:
        return [degree.cents for degree in self.degrees]

    def as_pairs(self) -> list[tuple[str, float]]:
        """Native (label, cents) pairs."""
        return [(degree.label, degree.cents) for degree in self.degrees]

    def relabel(self, tonic: QuartertoneNote | int) -> list[tuple[str, float]]:
        """
        (label, cents) pairs with labels transposed onto another tonic.

        Labels follow the measured-scale convention: pitch-class name, primed
        once per octave above the tonic.
        """
        tonic_class = tonic.doubled_midi if isinstance(tonic, QuartertoneNote) else tonic
        pairs = []
        for degree in self.degrees:
            name = pitch_class_name(tonic_class + degree.step)
            primes = "'" * (degree.step // QUARTERTONES_PER_OCTAVE)
            pairs.append((name + primes, degree.cents))
        return pairs


def _sol_scale(name: str, column: int) -> ReferenceScale:
    degrees = tuple(
        ScaleDegree(label, float(values[column]), step)
        for label, step, values in _INTERVALS_COMPARISON
        if values[column] is not None
    )
    return ReferenceScale(name, SOL_PITCH_CLASS, degrees)


def _c_scale(name: str, rows: list[tuple[str, int, float]]) -> ReferenceScale:
    degrees = tuple(ScaleDegree(label, float(cents), step) for label, step, cents in rows)
    return ReferenceScale(name, C_PITCH_CLASS, degrees)


# label, quartertone step above Sol, (Farhat, Talāi, Marāghi)
_INTERVALS_COMPARISON: list[tuple[str, int, tuple[int | None, int | None, int | None]]] = [
    ("Sol", 0, (0, 0, 0)),
    ("La b", 2, (90, None, 90)),
    ("La k", 3, (135, 140, 180)),
    ("La", 4, (205, 200, 204)),
    ("Si b", 6, (295, 280, 294)),
    ("Si k", 7, (340, 350, 384)),
    ("Si", 8, (410, 380, 408)),
    ("Do", 10, (500, 500, 498)),
    ("Re b", 12, (565, 580, 588)),
    ("Re k", 13, (630, 640, 678)),
    ("Re", 14, (700, 700, 702)),
    ("Mi b", 16, (790, None, 792)),
    ("Mi k", 17, (835, 840, 882)),
    ("Mi", 18, (905, 900, 906)),
    ("Fa", 20, (995, 980, 996)),
    # printed without a note name
    ("-", 21, (1040, 1050, 1086)),
    ("Fa#", 22, (1110, None, 1176)),
    ("Sol'", 24, (1200, 1200, 1200)),
]

REFERENCE_SCALES: dict[str, ReferenceScale] = {
    "Farhat": _sol_scale("Farhat", 0),
    "Talāi": _sol_scale("Talāi", 1),
    "Marāghi": _sol_scale("Marāghi", 2),
    "Vaziri": _c_scale(
        "Vaziri",
        [
            ("C", 0, 0),
            ("D", 4, 200),
            ("Ek", 7, 350),
            ("F", 10, 500),
            ("G", 14, 700),
            ("Ak", 17, 850),
            ("Bb", 20, 1000),
            ("C'", 24, 1200),
        ],
    ),
    "Fārābi-I": _c_scale(
        "Fārābi-I",
        [
            ("C", 0, 0),
            ("D", 4, 204),
            ("E", 8, 408),
            ("F", 10, 498),
            ("G", 14, 702),
            ("A", 18, 906),
            ("Bb", 20, 996),
            ("C'", 24, 1200),
        ],
    ),
    "Fārābi-II": _c_scale(
        "Fārābi-II",
        [
            ("C", 0, 0),
            ("D", 4, 204),
            ("Ek", 7, 355),
            ("F", 10, 498),
            ("G", 14, 702),
            ("Ak", 17, 853),
            ("Bb", 20, 996),
            ("C'", 24, 1200),
        ],
    ),
    "Fārābi-III": _c_scale(
        "Fārābi-III",
        [
            ("C", 0, 0),
            ("D", 4, 204),
            ("Eb", 6, 303),
            ("F", 10, 498),
            ("G", 14, 702),
            ("Ab", 16, 801),
            ("Bb", 20, 996),
            ("C'", 24, 1200),
        ],
    ),
}

# Third-degree positions a Fārābi string may use
FARABI_THIRD_VARIANTS: dict[str, float] = {
    "vostā fars": 303.0,
    "vostā zalzal": 355.0,
    "natural": 408.0,
}

# Marāghi's interval classes; the stored scale uses the 180-cent mojannab
MARAGHI_INTERVAL_CLASSES: dict[str, float] = {
    "tanini": ratio_to_cents(9, 8),
    "baqieh": ratio_to_cents(256, 243),
    "large mojannab": 180.0,
    "large mojannab (alternative)": 182.0,
    "small mojannab": 112.0,
    "small mojannab (alternative)": 114.0,
}


def _fold(name: str) -> str:
    stripped = unicodedata.normalize("NFKD", name)
    return "".join(ch for ch in stripped if not unicodedata.combining(ch)).casefold()


_ALIASES: dict[str, str] = {_fold(name): name for name in REFERENCE_SCALES}


def reference_scale(name: str) -> ReferenceScale:
    """
    Look up a built-in reference scale.

    Diacritics and case are ignored, so "Talai" and "farabi-ii" work too.

    Raises:
        UnknownScaleError: If the name is not a known scale
    """
    canonical = _ALIASES.get(_fold(name.strip()))
    if canonical is None:
        raise UnknownScaleError(
            f"Unknown reference scale '{name}'. Known: {', '.join(REFERENCE_SCALES)}"
        )
    return REFERENCE_SCALES[canonical]


def scales_document() -> dict[str, list[list[str | float]]]:
    """All reference scales as scale name -> [[label, cents], ...]."""
    return {
        name: [[label, cents] for label, cents in scale.as_pairs()]
        for name, scale in REFERENCE_SCALES.items()
    }
