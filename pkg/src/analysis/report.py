# report.py
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import pandas as pd

from src.analysis.intervals import IntervalMeasurement
from src.constants import DEFAULT_MIN_SAMPLES, HIGH_VARIANCE_BAND, LOW_VARIANCE_BAND
from src.exceptions import ParameterError
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["interval", "n", "mean_cents", "sd_cents", "group"]


class VarianceGroup(StrEnum):
    LOW = "low-variance"
    HIGH = "high-variance"
    UNGROUPED = "ungrouped"


def variance_group(sd: float) -> VarianceGroup:
    """Open bands: 5 < sd < 8 is low, 11 < sd < 14 is high, anything else ungrouped."""
    low_min, low_max = LOW_VARIANCE_BAND
    high_min, high_max = HIGH_VARIANCE_BAND
    if low_min < sd < low_max:
        return VarianceGroup.LOW
    if high_min < sd < high_max:
        return VarianceGroup.HIGH
    return VarianceGroup.UNGROUPED


@dataclass(frozen=True)
class IntervalStatistic:
    lower: QuartertoneNote
    upper: QuartertoneNote
    n_samples: int
    mean: float
    sd: float
    group: VarianceGroup

    @property
    def name(self) -> str:
        return f"{self.lower.label}-{self.upper.label}"


@dataclass(frozen=True)
class IntervalReport:
    """Interval statistics over one piece or a corpus, ordered by pitch."""

    intervals: tuple[IntervalStatistic, ...]
    piece_ids: tuple[str, ...] = ()
    n_measurements: int = 0
    excluded: tuple[str, ...] = ()

    def statistic(
        self, lower: QuartertoneNote, upper: QuartertoneNote
    ) -> IntervalStatistic | None:
        return next(
            (s for s in self.intervals if s.lower == lower and s.upper == upper), None
        )

    def means(self) -> dict[tuple[QuartertoneNote, QuartertoneNote], float]:
        return {(s.lower, s.upper): s.mean for s in self.intervals}

    def to_frame(self) -> pd.DataFrame:
        """Rows with columns interval, n, mean_cents, sd_cents, group."""
        return pd.DataFrame(
            [
                {
                    "interval": s.name,
                    "n": s.n_samples,
                    "mean_cents": s.mean,
                    "sd_cents": s.sd,
                    "group": str(s.group),
                }
                for s in self.intervals
            ],
            columns=REPORT_COLUMNS,
        )


def aggregate(
    measurements: Sequence[IntervalMeasurement],
    min_samples: int = DEFAULT_MIN_SAMPLES,
) -> IntervalReport:
    """
    Mean and sample standard deviation per (lower, upper) note pair.

    Pairs with fewer than min_samples measurements are left out of the
    report and listed in excluded. The result does not depend on the order
    of measurements.

    Raises:
        ParameterError: If measurements is empty or min_samples < 1
    """
    if min_samples < 1:
        raise ParameterError(f"min_samples must be >= 1, got {min_samples}")
    if not measurements:
        raise ParameterError("No interval measurements to aggregate")

    frame = pd.DataFrame(
        [
            {
                "lower": m.lower_note.doubled_midi,
                "upper": m.upper_note.doubled_midi,
                "piece_id": m.piece_id,
                "size": m.size,
            }
            for m in measurements
        ]
    ).sort_values(["lower", "upper", "piece_id", "size"], kind="mergesort")

    grouped = frame.groupby(["lower", "upper"], sort=True)["size"]
    table = grouped.agg(n="count", mean="mean", sd=lambda s: s.std(ddof=1))

    intervals: list[IntervalStatistic] = []
    excluded: list[str] = []
    for (lower, upper), row in table.iterrows():
        lower_note, upper_note = QuartertoneNote(int(lower)), QuartertoneNote(int(upper))
        n = int(row["n"])
        if n < min_samples:
            excluded.append(f"{lower_note.label}-{upper_note.label}")
            continue
        sd = float(row["sd"]) if n > 1 else 0.0
        intervals.append(
            IntervalStatistic(
                lower=lower_note,
                upper=upper_note,
                n_samples=n,
                mean=float(row["mean"]),
                sd=sd,
                group=variance_group(sd),
            )
        )

    if excluded:
        logger.info(
            f"Excluded {len(excluded)} intervals with fewer than {min_samples} samples: "
            f"{', '.join(excluded)}"
        )
    return IntervalReport(
        intervals=tuple(intervals),
        piece_ids=tuple(sorted(set(frame["piece_id"]))),
        n_measurements=len(measurements),
        excluded=tuple(excluded),
    )
