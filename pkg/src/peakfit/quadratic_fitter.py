# quadratic_fitter.py
import logging

import numpy as np
import numpy.typing as npt

from src.constants import MIN_QUADRATIC_POINTS
from src.exceptions import FitConvergenceError, FitPreconditionError
from src.histogram.mountains import MountainRange
from src.peakfit.base_fitter import BasePeakFitter, FloatArray, as_points, rms
from src.peakfit.models import ModelKind, PeakModel, QuadraticParams

logger = logging.getLogger(__name__)


def fit_quadratic(
    points: npt.ArrayLike | list[tuple[float, float]],
) -> tuple[QuadraticParams, float, float]:
    """
    Ordinary least-squares parabola through (cents, count) points.

    Returns:
        Parameters, peak (vertex clamped to the data span) and rms residual

    Raises:
        FitPreconditionError: Fewer than 3 points
        FitConvergenceError: The parabola opens upward (no maximum)
    """
    x, y = as_points(points)
    if x.size < MIN_QUADRATIC_POINTS or np.unique(x).size < MIN_QUADRATIC_POINTS:
        raise FitPreconditionError(
            f"Quadratic needs {MIN_QUADRATIC_POINTS} distinct points, got {np.unique(x).size}"
        )
    center = float(x.mean())
    u = x - center
    a, b_u, c_u = np.polyfit(u, y, 2)
    if a >= 0:
        raise FitConvergenceError(f"Quadratic is not concave (a = {a:.4g})")

    vertex = center - b_u / (2.0 * a)
    params = QuadraticParams(
        a=float(a),
        b=float(b_u - 2.0 * a * center),
        c=float(a * center**2 - b_u * center + c_u),
        vertex=float(vertex),
    )
    residual = rms(np.polyval([a, b_u, c_u], u) - y)
    peak = float(np.clip(vertex, x.min(), x.max()))
    return params, peak, residual


class QuadraticFitter(BasePeakFitter):
    """First fallback: a concave parabola."""

    model_kind = ModelKind.QUADRATIC

    def fit(self, x: FloatArray, y: FloatArray, r: MountainRange) -> PeakModel:
        params, peak, residual = fit_quadratic(np.column_stack([x, y]))
        return PeakModel(
            model=self.model_kind,
            params=params.as_dict(),
            peak_cents=float(np.clip(peak, r.lo, r.hi)),
            rms_residual=residual,
            lo=r.lo,
            hi=r.hi,
        )
