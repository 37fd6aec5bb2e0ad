# refine.py
import logging

import numpy as np

from src.config_validation import PeakFitConfig
from src.exceptions import PeakFitError
from src.histogram.histogram import Histogram
from src.histogram.mountains import MountainRange
from src.peakfit.argmax_fitter import ArgmaxFitter
from src.peakfit.base_fitter import BasePeakFitter, FloatArray
from src.peakfit.models import PeakModel
from src.peakfit.quadratic_fitter import QuadraticFitter
from src.peakfit.tilted_gaussian_fitter import TiltedGaussianFitter

logger = logging.getLogger(__name__)

# Tried in order; the first model that fits wins
FITTER_CHAIN: list[type[BasePeakFitter]] = [
    TiltedGaussianFitter,
    QuadraticFitter,
    ArgmaxFitter,
]


def mountain_points(h: Histogram, r: MountainRange) -> tuple[FloatArray, FloatArray]:
    """Bin centers and counts of the bins inside the range."""
    centers = h.centers
    inside = (centers >= r.lo) & (centers <= r.hi)
    return centers[inside], h.counts[inside]


def refine_peak(
    h: Histogram,
    r: MountainRange,
    config: PeakFitConfig | None = None,
) -> PeakModel:
    """
    Best available peak estimate for a mountain.

    Tries the tilted Gaussian, then the parabola, then the raw argmax bin.
    The returned peak always lies in [r.lo, r.hi].
    """
    config = config or PeakFitConfig()
    x, y = mountain_points(h, r)
    errors: list[str] = []
    for fitter_class in FITTER_CHAIN:
        fitter = fitter_class(config)
        try:
            model = fitter.fit(x, y, r)
        except PeakFitError as e:
            errors.append(f"{fitter.model_kind}: {e}")
            logger.debug(f"{fitter.model_kind} failed on [{r.lo}, {r.hi}]: {e}")
            continue
        if errors:
            logger.warning(
                f"Mountain [{r.lo:.1f}, {r.hi:.1f}] fell back to {model.model} "
                f"({'; '.join(errors)})"
            )
        logger.debug(
            f"Mountain [{r.lo:.1f}, {r.hi:.1f}]: {model.model} peak "
            f"{model.peak_cents:.2f} rms {model.rms_residual:.3f}"
        )
        return model

    # only reachable for a range that holds no bins
    raise PeakFitError(
        f"No peak model applies to [{r.lo}, {r.hi}]: {'; '.join(errors)}"
    )


def peak_amplitude(model: PeakModel, y: FloatArray) -> float:
    """Height the residual is judged against: the bell height, else the range max."""
    if "c3" in model.params:
        return float(model.params["c3"])
    return float(np.max(y)) if y.size else 0.0
