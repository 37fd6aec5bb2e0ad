# argmax_fitter.py
import numpy as np

from src.exceptions import FitPreconditionError
from src.histogram.mountains import MountainRange
from src.peakfit.base_fitter import BasePeakFitter, FloatArray
from src.peakfit.models import ModelKind, PeakModel


class ArgmaxFitter(BasePeakFitter):
    """Last resort: the center of the tallest bin."""

    model_kind = ModelKind.ARGMAX

    def fit(self, x: FloatArray, y: FloatArray, r: MountainRange) -> PeakModel:
        if x.size == 0:
            raise FitPreconditionError("Mountain holds no histogram points")
        return PeakModel(
            model=self.model_kind,
            params={},
            peak_cents=float(x[int(np.argmax(y))]),
            rms_residual=0.0,
            lo=r.lo,
            hi=r.hi,
            low_confidence=True,
        )
