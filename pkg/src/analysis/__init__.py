from src.analysis.calibration import Calibration, calibrate_offset
from src.analysis.comparison import (
    DegreeDelta,
    ScaleComparison,
    ScaleRow,
    compare_to_reference,
    scale_rows,
)
from src.analysis.intervals import IntervalMeasurement, NotePeak, extract_intervals
from src.analysis.report import (
    IntervalReport,
    IntervalStatistic,
    VarianceGroup,
    aggregate,
    variance_group,
)

__all__ = [
    "Calibration",
    "DegreeDelta",
    "IntervalMeasurement",
    "IntervalReport",
    "IntervalStatistic",
    "NotePeak",
    "ScaleComparison",
    "ScaleRow",
    "VarianceGroup",
    "aggregate",
    "calibrate_offset",
    "compare_to_reference",
    "extract_intervals",
    "scale_rows",
    "variance_group",
]
