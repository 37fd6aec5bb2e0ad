# comparison.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import pandas as pd

from src.analysis.report import IntervalReport
from src.exceptions import ParameterError, ScaleChainGapError
from src.pitch.notes import QuartertoneNote, degree_label
from src.pitch.scales import ReferenceScale

logger = logging.getLogger(__name__)

COMPARISON_COLUMNS = ["degree", "measured", "reference", "delta"]


@dataclass(frozen=True)
class ScaleRow:
    label: str
    note: QuartertoneNote
    cents: float


@dataclass(frozen=True)
class DegreeDelta:
    label: str
    measured: float
    reference: float

    @property
    def delta(self) -> float:
        return self.measured - self.reference


@dataclass(frozen=True)
class ScaleComparison:
    scale_name: str
    deltas: tuple[DegreeDelta, ...]
    unmatched_measured: tuple[str, ...]
    unmatched_reference: tuple[str, ...]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "degree": d.label,
                    "measured": d.measured,
                    "reference": d.reference,
                    "delta": d.delta,
                }
                for d in self.deltas
            ],
            columns=COMPARISON_COLUMNS,
        )


def scale_rows(
    report: IntervalReport, tonic: QuartertoneNote | None = None
) -> list[ScaleRow]:
    """
    Cumulative cents from the tonic along the chain of mean intervals.

    From each degree the chain follows the interval to the nearest note
    above. The tonic defaults to the lowest note in the report.

    Raises:
        ScaleChainGapError: If intervals exist above the point where the
            chain breaks
    """
    means = report.means()
    if tonic is None:
        if not means:
            raise ParameterError("Report holds no intervals and no tonic was given")
        tonic = min(lower for lower, _ in means)

    rows = [ScaleRow(degree_label(tonic, tonic), tonic, 0.0)]
    current, total = tonic, 0.0
    while True:
        steps = [(upper, mean) for (lower, upper), mean in means.items() if lower == current]
        if not steps:
            break
        upper, mean = min(steps, key=lambda step: step[0])
        total += mean
        current = upper
        rows.append(ScaleRow(degree_label(upper, tonic), upper, total))

    beyond = sorted(lower for lower, _ in means if lower > current)
    if beyond:
        missing = degree_label(beyond[0], tonic)
        raise ScaleChainGapError(
            f"Scale chain from {tonic.label} stops at "
            f"{degree_label(current, tonic)}; no mean interval leads to {missing}",
            missing_degree=missing,
        )
    return rows


def compare_to_reference(
    rows: Sequence[ScaleRow], scale: ReferenceScale
) -> ScaleComparison:
    """
    Measured minus reference cents per degree shared by both scales.

    The reference is relabelled onto the tonic of rows, so scales stored on
    another tonic compare by degree.

    Raises:
        ParameterError: If no degree is shared
    """
    if not rows:
        raise ParameterError("No measured scale rows to compare")
    reference = dict(scale.relabel(rows[0].note))
    measured_labels = [row.label for row in rows]

    deltas = tuple(
        DegreeDelta(row.label, row.cents, reference[row.label])
        for row in rows
        if row.label in reference
    )
    if not deltas:
        raise ParameterError(
            f"No degree of {measured_labels} appears in scale {scale.name}"
        )
    comparison = ScaleComparison(
        scale_name=scale.name,
        deltas=deltas,
        unmatched_measured=tuple(
            label for label in measured_labels if label not in reference
        ),
        unmatched_reference=tuple(
            label for label in reference if label not in measured_labels
        ),
    )
    logger.debug(
        f"{scale.name}: {len(deltas)} shared degrees, "
        f"max |delta| {max(abs(d.delta) for d in deltas):.1f} cents"
    )
    return comparison
