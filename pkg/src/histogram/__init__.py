from src.histogram.histogram import (
    Histogram,
    PitchTrace,
    build_histogram,
    derivative,
    histogram_from_cents,
    smooth,
)
from src.histogram.mountains import (
    MountainRange,
    find_mountain_ranges,
    find_shahed,
    mountain_area,
)

__all__ = [
    "Histogram",
    "MountainRange",
    "PitchTrace",
    "build_histogram",
    "derivative",
    "find_mountain_ranges",
    "find_shahed",
    "histogram_from_cents",
    "mountain_area",
    "smooth",
]
