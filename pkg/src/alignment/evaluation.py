# evaluation.py
import logging
from collections.abc import Collection, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.alignment.spans import NoteSpan
from src.constants import ORNAMENT_ONSET_BOUND_MS, STEADY_ONSET_BOUND_MS
from src.exceptions import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlignmentEvaluation:
    """Onset deviation per note against annotated onsets, in milliseconds."""

    detected_onsets: tuple[float, ...]
    deviations_ms: tuple[float, ...]

    @property
    def max_ms(self) -> float:
        return max(self.deviations_ms)

    @property
    def mean_ms(self) -> float:
        return float(np.mean(self.deviations_ms))

    def within_bounds(
        self,
        ornamented: Collection[int] = (),
        steady_bound_ms: float = STEADY_ONSET_BOUND_MS,
        ornament_bound_ms: float = ORNAMENT_ONSET_BOUND_MS,
    ) -> bool:
        """True when steady notes and ornamented notes stay within their bounds."""
        return all(
            deviation <= (ornament_bound_ms if k in ornamented else steady_bound_ms)
            for k, deviation in enumerate(self.deviations_ms)
        )


def evaluate_alignment(
    spans: Sequence[NoteSpan],
    ground_truth_onsets: Sequence[float] | npt.ArrayLike,
    times: npt.ArrayLike,
) -> AlignmentEvaluation:
    """
    Compare the start time of each note span with its annotated onset.

    Args:
        spans: Note spans from note_spans_from_path
        ground_truth_onsets: One onset in seconds per note
        times: Trace frame times in seconds

    Raises:
        ParameterError: If the onset count differs from the note count
    """
    onsets = np.asarray(ground_truth_onsets, dtype=float)
    frame_times = np.asarray(times, dtype=float)
    if onsets.size != len(spans):
        raise ParameterError(
            f"Got {onsets.size} annotated onsets for {len(spans)} notes"
        )
    if not spans:
        raise ParameterError("Nothing to evaluate")

    starts = np.array([min(span.start, frame_times.size - 1) for span in spans])
    detected = frame_times[starts]
    deviations = np.abs(detected - onsets) * 1000.0
    evaluation = AlignmentEvaluation(
        detected_onsets=tuple(float(v) for v in detected),
        deviations_ms=tuple(float(v) for v in deviations),
    )
    logger.info(
        f"Alignment onset deviation: max {evaluation.max_ms:.1f} ms, "
        f"mean {evaluation.mean_ms:.1f} ms over {len(spans)} notes"
    )
    return evaluation
