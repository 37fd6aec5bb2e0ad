# cents.py
import logging

import numpy as np
import numpy.typing as npt

from src.constants import (
    CENTS_PER_OCTAVE,
    DEFAULT_FIFTH_CENTS,
    FIFTH_DEDUP_TOLERANCE_CENTS,
    REFERENCE_ANCHOR_CENTS,
    REFERENCE_HZ,
)
from src.exceptions import ParameterError, PitchDomainError

logger = logging.getLogger(__name__)


def ratio_to_cents(numerator: float, denominator: float) -> float:
    """Relative size of the ratio numerator/denominator in cents."""
    if numerator <= 0 or denominator <= 0:
        raise PitchDomainError(
            f"Ratio terms must be positive, got {numerator}/{denominator}"
        )
    return float(CENTS_PER_OCTAVE * np.log2(numerator / denominator))


def hz_to_cents(
    frequency: float,
    reference: float = REFERENCE_HZ,
    anchor_cents: float = REFERENCE_ANCHOR_CENTS,
) -> float:
    """
    Absolute cents of a frequency.

    The axis is MIDI compatible: with the default reference (440 Hz) and
    anchor (6900), semitone N sits at exactly 100*N cents.
    """
    if frequency <= 0 or reference <= 0:
        raise PitchDomainError(
            f"Frequencies must be positive, got {frequency} Hz (reference {reference} Hz)"
        )
    return float(anchor_cents + CENTS_PER_OCTAVE * np.log2(frequency / reference))


def hz_array_to_cents(
    frequencies: npt.ArrayLike,
    reference: float = REFERENCE_HZ,
    anchor_cents: float = REFERENCE_ANCHOR_CENTS,
) -> npt.NDArray[np.float64]:
    """Vectorized hz_to_cents; NaN entries (unvoiced frames) stay NaN."""
    freqs = np.asarray(frequencies, dtype=float)
    if reference <= 0 or np.any(freqs[~np.isnan(freqs)] <= 0):
        raise PitchDomainError("Frequencies must be positive")
    return anchor_cents + CENTS_PER_OCTAVE * np.log2(freqs / reference)


def cents_to_hz(
    cents: float,
    reference: float = REFERENCE_HZ,
    anchor_cents: float = REFERENCE_ANCHOR_CENTS,
) -> float:
    """Inverse of hz_to_cents."""
    return float(reference * 2.0 ** ((cents - anchor_cents) / CENTS_PER_OCTAVE))


def circle_of_fifths_scale(
    ascending_steps: int,
    descending_steps: int,
    fifth: float = DEFAULT_FIFTH_CENTS,
) -> list[float]:
    """
    Pitches generated by stacking fifths above and below the tonic.

    Every k*fifth for k in [-descending_steps, ascending_steps] is folded into
    the octave, sorted, and pitches closer than half a cent are merged.

    Example:
        circle_of_fifths_scale(4, 12) contains every Marāghi degree.
    """
    if ascending_steps < 0 or descending_steps < 0:
        raise ParameterError("Step counts must be non-negative")
    if not 0 < fifth < CENTS_PER_OCTAVE:
        raise ParameterError(f"Fifth must lie inside the octave, got {fifth}")

    steps = np.arange(-descending_steps, ascending_steps + 1)
    folded = np.sort(np.mod(steps * fifth, CENTS_PER_OCTAVE))

    pitches: list[float] = []
    for value in folded:
        # Folding can land a hair below 1200 for large negative k
        if CENTS_PER_OCTAVE - value < FIFTH_DEDUP_TOLERANCE_CENTS:
            value = 0.0
        if any(abs(value - kept) < FIFTH_DEDUP_TOLERANCE_CENTS for kept in pitches):
            continue
        pitches.append(float(value))

    pitches.sort()
    logger.debug(
        f"Circle of fifths ({ascending_steps} up, {descending_steps} down, "
        f"fifth={fifth}) -> {len(pitches)} pitches"
    )
    return pitches
