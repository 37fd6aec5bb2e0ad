# models.py
from dataclasses import asdict, dataclass, field
from enum import StrEnum

import numpy as np
import numpy.typing as npt


class Typology(StrEnum):
    """Mountain shapes: clean, hidden neighbour, two peaks, flat top."""

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"


class ModelKind(StrEnum):
    TILTED_GAUSSIAN = "tilted-gaussian"
    QUADRATIC = "quadratic"
    ARGMAX = "argmax"


@dataclass(frozen=True)
class TiltedGaussianParams:
    """y = c1 + c2*x + c3*exp(-(x - c4)**2 / c5)"""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float

    def evaluate(self, x: npt.ArrayLike) -> npt.NDArray[np.float64]:
        x = np.asarray(x, dtype=float)
        return self.c1 + self.c2 * x + self.c3 * np.exp(-((x - self.c4) ** 2) / self.c5)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class QuadraticParams:
    """y = a*x**2 + b*x + c, with the vertex kept separately for precision."""

    a: float
    b: float
    c: float
    vertex: float

    def evaluate(self, x: npt.ArrayLike) -> npt.NDArray[np.float64]:
        x = np.asarray(x, dtype=float)
        return self.a * x**2 + self.b * x + self.c

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class PeakModel:
    """
    Fitted peak of one mountain.

    typology is filled in by classification; candidate_peaks lists both peaks
    of a two-peak (III) mountain, higher first.
    """

    model: ModelKind
    params: dict[str, float]
    peak_cents: float
    rms_residual: float
    lo: float
    hi: float
    typology: Typology | None = None
    low_confidence: bool = False
    candidate_peaks: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.lo <= self.peak_cents <= self.hi:
            raise ValueError(
                f"Peak {self.peak_cents} outside its range [{self.lo}, {self.hi}]"
            )
        if self.rms_residual < 0:
            raise ValueError("rms_residual must be non-negative")
