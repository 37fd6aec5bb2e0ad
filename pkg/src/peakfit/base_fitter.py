# base_fitter.py
import logging

import numpy as np
import numpy.typing as npt

from src.config_validation import PeakFitConfig
from src.constants import DEFAULT_PEAK_GRID_STEP
from src.histogram.mountains import MountainRange
from src.peakfit.models import ModelKind, PeakModel

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def as_points(
    points: npt.ArrayLike | list[tuple[float, float]],
) -> tuple[FloatArray, FloatArray]:
    """Split (cents, count) pairs into sorted x and y arrays."""
    array = np.asarray(points, dtype=float).reshape(-1, 2)
    order = np.argsort(array[:, 0], kind="stable")
    return array[order, 0], array[order, 1]


def rms(residuals: npt.ArrayLike) -> float:
    values = np.asarray(residuals, dtype=float)
    return float(np.sqrt(np.mean(values**2))) if values.size else 0.0


def grid_argmax(curve, lo: float, hi: float, step: float = DEFAULT_PEAK_GRID_STEP) -> float:
    """Location of the maximum of curve(x) on a regular grid over [lo, hi]."""
    n = max(int(np.ceil((hi - lo) / step)), 1)
    grid = np.linspace(lo, hi, n + 1)
    return float(grid[int(np.argmax(curve(grid)))])


class BasePeakFitter:
    """Base class for the peak models tried on a mountain, in fallback order."""

    model_kind: ModelKind  # Must be defined by subclasses

    def __init__(self, config: PeakFitConfig | None = None) -> None:
        self.config = config or PeakFitConfig()

    def fit(self, x: FloatArray, y: FloatArray, r: MountainRange) -> PeakModel:
        """
        Fit the model to the mountain's points and locate its peak in [r.lo, r.hi].

        Subclasses raise PeakFitError when the model does not apply.
        """
        raise NotImplementedError("Subclasses must implement fit")

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"
