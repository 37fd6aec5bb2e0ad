# tilted_gaussian_fitter.py
import logging

import numpy as np
import numpy.typing as npt
from scipy.optimize import OptimizeResult, least_squares

from src.constants import (
    DEFAULT_FIT_MAX_ITERATIONS,
    DEFAULT_FIT_TOLERANCE,
    MIN_GAUSSIAN_POINTS,
    MIN_GAUSSIAN_SPAN_CENTS,
)
from src.exceptions import FitConvergenceError, FitPreconditionError
from src.histogram.mountains import MountainRange
from src.peakfit.base_fitter import (
    BasePeakFitter,
    FloatArray,
    as_points,
    grid_argmax,
    rms,
)
from src.peakfit.models import ModelKind, PeakModel, TiltedGaussianParams

logger = logging.getLogger(__name__)

# c3 and c5 stay positive; a run that ends on either bound is not a bell
_LOWER_BOUNDS = np.array([-np.inf, -np.inf, 0.0, -np.inf, 1e-6])
_UPPER_BOUNDS = np.full(5, np.inf)


def _model(p: FloatArray, u: FloatArray) -> FloatArray:
    b1, c2, c3, d4, c5 = p
    return b1 + c2 * u + c3 * np.exp(-((u - d4) ** 2) / c5)


def _residuals(p: FloatArray, u: FloatArray, y: FloatArray) -> FloatArray:
    return _model(p, u) - y


def _jacobian(p: FloatArray, u: FloatArray, y: FloatArray) -> FloatArray:
    _, _, c3, d4, c5 = p
    shift = u - d4
    bell = np.exp(-(shift**2) / c5)
    return np.column_stack(
        [
            np.ones_like(u),
            u,
            bell,
            c3 * bell * 2.0 * shift / c5,
            c3 * bell * shift**2 / c5**2,
        ]
    )


def initial_guess(x: FloatArray, y: FloatArray) -> FloatArray:
    """
    Deterministic start: baseline, no tilt, height, argmax, and a width taken
    from the run of points at or above half height around the argmax.

    Half height is measured above the chord joining the two end points, so a
    tilted baseline does not widen the run. c5 = 2*sigma**2 with
    sigma = FWHM / (2*sqrt(2*ln 2)), i.e. FWHM**2 / (4*ln 2).
    """
    baseline = y.min()
    top = int(np.argmax(y))
    chord = np.interp(x, [x[0], x[-1]], [y[0], y[-1]])
    above = y - chord
    half = above[top] / 2.0
    left = top
    while left > 0 and above[left - 1] >= half:
        left -= 1
    right = top
    while right < y.size - 1 and above[right + 1] >= half:
        right += 1
    spacing = float(np.min(np.diff(x))) if x.size > 1 else 1.0
    fwhm = max(float(x[right] - x[left]), spacing, 1e-3)
    return np.array(
        [
            baseline,
            0.0,
            y[top] - baseline,
            x[top],
            fwhm**2 / (4.0 * np.log(2.0)),
        ]
    )


def perturbed_starts(start: FloatArray, count: int) -> list[FloatArray]:
    """
    The deterministic start first, then shifted-center and rescaled-width
    variants, at least `count` of them.
    """
    sigma = float(np.sqrt(start[4] / 2.0))
    steps = [(0.0, 1.0), (-sigma, 1.0), (sigma, 1.0), (0.0, 0.25), (0.0, 4.0)]
    k = 2
    while len(steps) < count:
        steps.extend([(-k * sigma, 1.0), (k * sigma, 1.0)])
        k += 1
    starts = []
    for d4_shift, c5_scale in steps:
        variant = start.copy()
        variant[3] += d4_shift
        variant[4] *= c5_scale
        starts.append(variant)
    return starts


def _solve(
    p0: FloatArray, u: FloatArray, y: FloatArray, max_iterations: int, tolerance: float
) -> OptimizeResult | None:
    """One bounded trust-region run; None when it fails or ends on a bound."""
    try:
        result = least_squares(
            _residuals,
            p0,
            jac=_jacobian,
            args=(u, y),
            bounds=(_LOWER_BOUNDS, _UPPER_BOUNDS),
            method="trf",
            x_scale="jac",
            ftol=tolerance,
            xtol=1e-12,
            gtol=1e-12,
            max_nfev=max_iterations,
        )
    except (ValueError, FloatingPointError) as e:
        logger.debug(f"Start {p0} rejected by the solver: {e}")
        return None
    if result.status <= 0 or not np.all(np.isfinite(result.x)):
        logger.debug(f"Start {p0} did not converge: {result.message}")
        return None
    if np.any(result.active_mask != 0):
        logger.debug(f"Start {p0} ended on a bound {result.x}")
        return None
    return result


def fit_tilted_gaussian(
    points: npt.ArrayLike | list[tuple[float, float]],
    max_iterations: int = DEFAULT_FIT_MAX_ITERATIONS,
    tolerance: float = DEFAULT_FIT_TOLERANCE,
    multi_start_count: int = 1,
) -> tuple[TiltedGaussianParams, float]:
    """
    Damped least-squares fit of y = c1 + c2*x + c3*exp(-(x - c4)**2 / c5).

    The fit runs on cents centered at the mean of x, with c3 and c5 held
    positive; parameters are mapped back to absolute cents on return.
    The first `multi_start_count` starts all run and the lowest cost wins.
    If none of them converges, the remaining rescue starts are tried in
    order and the first that converges is kept.

    Args:
        points: (cents, count) pairs
        max_iterations: Evaluation budget per start
        tolerance: Relative cost change that counts as converged
        multi_start_count: Number of starts to compare (1 = deterministic start only)

    Returns:
        Fitted parameters and the rms residual in counts

    Raises:
        FitPreconditionError: Fewer than 6 points or a span under 10 cents
        FitConvergenceError: No start converged to a positive-amplitude bell
    """
    x, y = as_points(points)
    if x.size < MIN_GAUSSIAN_POINTS:
        raise FitPreconditionError(
            f"Tilted Gaussian needs {MIN_GAUSSIAN_POINTS} points, got {x.size}"
        )
    if x.max() - x.min() < MIN_GAUSSIAN_SPAN_CENTS:
        raise FitPreconditionError(
            f"Points span {x.max() - x.min():.2f} cents, "
            f"need {MIN_GAUSSIAN_SPAN_CENTS}"
        )

    center = float(x.mean())
    u = x - center
    start = initial_guess(u, y)
    if start[2] <= 0:
        raise FitConvergenceError("Mountain is flat; no bell to fit")

    compared = max(multi_start_count, 1)
    starts = perturbed_starts(start, compared)
    best = None
    for i, p0 in enumerate(starts):
        if best is not None and i >= compared:
            break
        result = _solve(p0, u, y, max_iterations, tolerance)
        if result is None:
            continue
        if best is None or result.cost < best.cost:
            best = result

    if best is None:
        raise FitConvergenceError("Tilted Gaussian fit did not converge")

    b1, c2, c3, d4, c5 = (float(v) for v in best.x)
    params = TiltedGaussianParams(c1=b1 - c2 * center, c2=c2, c3=c3, c4=d4 + center, c5=c5)
    return params, rms(best.fun)


class TiltedGaussianFitter(BasePeakFitter):
    """Primary model: a Gaussian bell on a sloped baseline."""

    model_kind = ModelKind.TILTED_GAUSSIAN

    def fit(self, x: FloatArray, y: FloatArray, r: MountainRange) -> PeakModel:
        starts = self.config.multi_start_count if self.config.multi_start else 1
        params, residual = fit_tilted_gaussian(
            np.column_stack([x, y]),
            max_iterations=self.config.max_iterations,
            tolerance=self.config.tolerance,
            multi_start_count=starts,
        )
        if not r.lo <= params.c4 <= r.hi:
            raise FitConvergenceError(
                f"Fitted center {params.c4:.2f} left the mountain [{r.lo}, {r.hi}]"
            )
        peak = grid_argmax(params.evaluate, r.lo, r.hi, self.config.grid_step)
        return PeakModel(
            model=self.model_kind,
            params=params.as_dict(),
            peak_cents=peak,
            rms_residual=residual,
            lo=r.lo,
            hi=r.hi,
        )
