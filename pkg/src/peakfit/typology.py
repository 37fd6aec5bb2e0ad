# typology.py
"""
Four-way mountain typology.

I    one clean peak that the fitted curve follows closely
II   one visible peak hiding a second aligned note less than a quartertone away
III  two distinct peaks inside one mountain
IV   a flat top (typically vibrato) at least 30 cents wide
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import find_peaks

from src.config_validation import ClassificationConfig
from src.histogram.histogram import Histogram
from src.histogram.mountains import MountainRange
from src.peakfit.models import PeakModel, Typology
from src.peakfit.refine import mountain_points, peak_amplitude
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Classification:
    typology: Typology
    low_confidence: bool = False
    # both peaks of a type III mountain, taller first
    candidate_peaks: tuple[float, ...] = ()


def _distinct_peaks(
    x: np.ndarray, y: np.ndarray, config: ClassificationConfig
) -> tuple[float, ...]:
    if y.size < 3:
        return ()
    indices, _ = find_peaks(y, prominence=config.prominence_fraction * y.max())
    if indices.size < 2:
        return ()
    taller_first = indices[np.argsort(-y[indices], kind="stable")]
    return tuple(float(x[i]) for i in taller_first)


def _plateau_width(x: np.ndarray, y: np.ndarray, fraction: float, bin_width: float) -> float:
    """Width of the contiguous region at or above fraction*max around the argmax."""
    top = int(np.argmax(y))
    high = y >= fraction * y[top]
    left = top
    while left > 0 and high[left - 1]:
        left -= 1
    right = top
    while right < y.size - 1 and high[right + 1]:
        right += 1
    return float(x[right] - x[left] + bin_width)


def _hidden_note(
    notes: Sequence[tuple[QuartertoneNote, float]],
    area: float,
    config: ClassificationConfig,
) -> bool:
    masses: dict[QuartertoneNote, float] = {}
    for note, mass in notes:
        if mass > 0:
            masses[note] = masses.get(note, 0.0) + mass
    if len(masses) < 2:
        return False
    ranked = sorted(masses.items(), key=lambda item: (-item[1], item[0]))
    major, _ = ranked[0]
    return any(
        abs(note.nominal_cents - major.nominal_cents) <= config.hidden_note_max_distance
        and mass >= config.minor_note_mass_fraction * area
        for note, mass in ranked[1:]
    )


def classify_peak(
    h: Histogram,
    r: MountainRange,
    fit: PeakModel,
    aligned_notes_in_range: Sequence[tuple[QuartertoneNote, float]] = (),
    config: ClassificationConfig | None = None,
) -> Classification:
    """
    Assign a typology to a fitted mountain.

    Checks run in order III, IV, II, I. Without aligned notes type II cannot
    be detected. Shapes that match nothing are reported as I with low
    confidence.
    """
    config = config or ClassificationConfig()
    x, y = mountain_points(h, r)
    if y.size == 0 or y.max() <= 0:
        return Classification(Typology.I, low_confidence=True)

    candidates = _distinct_peaks(x, y, config)
    if candidates:
        result = Classification(Typology.III, candidate_peaks=candidates)
    elif (
        _plateau_width(x, y, config.plateau_fraction, h.bin_width)
        >= config.plateau_min_width
    ):
        result = Classification(Typology.IV)
    elif _hidden_note(aligned_notes_in_range, r.area, config):
        result = Classification(Typology.II)
    elif fit.rms_residual <= config.residual_fraction * peak_amplitude(fit, y):
        result = Classification(Typology.I, low_confidence=fit.low_confidence)
    else:
        result = Classification(Typology.I, low_confidence=True)

    logger.debug(
        f"Mountain [{r.lo:.1f}, {r.hi:.1f}] -> type {result.typology}"
        + (" (low confidence)" if result.low_confidence else "")
    )
    return result


def apply_classification(
    fit: PeakModel,
    classification: Classification,
    resolution: str = "higher",
) -> PeakModel:
    """
    Copy of fit carrying the typology, with a type III peak resolved.

    "higher" takes the taller of the two peaks; "middle" keeps the fitted
    curve's maximum, which sits between them.
    """
    peak = fit.peak_cents
    if (
        classification.typology is Typology.III
        and resolution == "higher"
        and classification.candidate_peaks
    ):
        peak = float(np.clip(classification.candidate_peaks[0], fit.lo, fit.hi))
    return replace(
        fit,
        peak_cents=peak,
        typology=classification.typology,
        low_confidence=fit.low_confidence or classification.low_confidence,
        candidate_peaks=classification.candidate_peaks,
    )
