from src.peakfit.argmax_fitter import ArgmaxFitter
from src.peakfit.base_fitter import BasePeakFitter
from src.peakfit.models import (
    ModelKind,
    PeakModel,
    QuadraticParams,
    TiltedGaussianParams,
    Typology,
)
from src.peakfit.quadratic_fitter import QuadraticFitter, fit_quadratic
from src.peakfit.refine import FITTER_CHAIN, mountain_points, refine_peak
from src.peakfit.tilted_gaussian_fitter import TiltedGaussianFitter, fit_tilted_gaussian
from src.peakfit.typology import Classification, apply_classification, classify_peak

__all__ = [
    "FITTER_CHAIN",
    "ArgmaxFitter",
    "BasePeakFitter",
    "Classification",
    "ModelKind",
    "PeakModel",
    "QuadraticFitter",
    "QuadraticParams",
    "TiltedGaussianFitter",
    "TiltedGaussianParams",
    "Typology",
    "apply_classification",
    "classify_peak",
    "fit_quadratic",
    "fit_tilted_gaussian",
    "mountain_points",
    "refine_peak",
]
