"""
Run configuration validation using Pydantic models.
"""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.constants import (
    DEFAULT_BIN_WIDTH,
    DEFAULT_FIT_MAX_ITERATIONS,
    DEFAULT_FIT_TOLERANCE,
    DEFAULT_HIDDEN_NOTE_MAX_DISTANCE_CENTS,
    DEFAULT_HOP_TOLERANCE,
    DEFAULT_MAX_F0_HZ,
    DEFAULT_MIN_F0_HZ,
    DEFAULT_MIN_MASS,
    DEFAULT_MIN_PROMINENCE,
    DEFAULT_MIN_SAMPLES,
    DEFAULT_MINOR_NOTE_MASS_FRACTION,
    DEFAULT_MULTI_START_COUNT,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PEAK_GRID_STEP,
    DEFAULT_PLATEAU_FRACTION,
    DEFAULT_PLATEAU_MIN_WIDTH_CENTS,
    DEFAULT_PROMINENCE_FRACTION,
    DEFAULT_REFERENCE_SCALES,
    DEFAULT_RESIDUAL_FRACTION,
    DEFAULT_SMOOTHING_WINDOW,
    DEFAULT_UNVOICED_PENALTY_CENTS,
)


class _Section(BaseModel):
    model_config = ConfigDict(validate_assignment=True, extra="forbid")


class HistogramConfig(_Section):
    """Histogram construction and mountain detection settings."""

    bin_width: float = Field(
        default=DEFAULT_BIN_WIDTH, gt=0, le=50, description="Bin width in cents"
    )
    smoothing_window: int = Field(
        default=DEFAULT_SMOOTHING_WINDOW,
        ge=1,
        le=301,
        description="Moving-average window in bins",
    )
    min_prominence: float = Field(
        default=DEFAULT_MIN_PROMINENCE,
        gt=0,
        lt=1,
        description="Minimum peak prominence as a fraction of the histogram maximum",
    )
    min_mass: float = Field(
        default=DEFAULT_MIN_MASS,
        gt=0,
        lt=1,
        description="Minimum mountain mass as a fraction of the total mass",
    )

    @field_validator("smoothing_window")
    @classmethod
    def validate_odd_window(cls, v: Any) -> int:
        """The moving average is centered, so the window must be odd."""
        if v % 2 == 0:
            raise ValueError("smoothing_window must be odd")
        return v


class IngestConfig(_Section):
    """Pitch-trace ingestion filter."""

    min_f0_hz: float = Field(default=DEFAULT_MIN_F0_HZ, gt=0)
    max_f0_hz: float = Field(default=DEFAULT_MAX_F0_HZ, gt=0)
    hop_tolerance: float = Field(default=DEFAULT_HOP_TOLERANCE, gt=0, lt=0.5)

    @model_validator(mode="after")
    def validate_f0_range(self) -> "IngestConfig":
        if self.min_f0_hz >= self.max_f0_hz:
            raise ValueError("min_f0_hz must be below max_f0_hz")
        return self


class PeakFitConfig(_Section):
    """Nonlinear least-squares settings for mountain peak fitting."""

    max_iterations: int = Field(default=DEFAULT_FIT_MAX_ITERATIONS, ge=10, le=10000)
    tolerance: float = Field(default=DEFAULT_FIT_TOLERANCE, gt=0, lt=1e-2)
    grid_step: float = Field(default=DEFAULT_PEAK_GRID_STEP, gt=0, le=1)
    multi_start: bool = False
    multi_start_count: int = Field(default=DEFAULT_MULTI_START_COUNT, ge=1, le=50)


class ClassificationConfig(_Section):
    """Thresholds of the four-way mountain typology."""

    prominence_fraction: float = Field(
        default=DEFAULT_PROMINENCE_FRACTION, gt=0, lt=1
    )
    plateau_fraction: float = Field(default=DEFAULT_PLATEAU_FRACTION, gt=0, lt=1)
    plateau_min_width: float = Field(default=DEFAULT_PLATEAU_MIN_WIDTH_CENTS, gt=0)
    hidden_note_max_distance: float = Field(
        default=DEFAULT_HIDDEN_NOTE_MAX_DISTANCE_CENTS, gt=0
    )
    minor_note_mass_fraction: float = Field(
        default=DEFAULT_MINOR_NOTE_MASS_FRACTION, gt=0, lt=1
    )
    residual_fraction: float = Field(default=DEFAULT_RESIDUAL_FRACTION, gt=0, lt=1)
    type_iii_resolution: Literal["higher", "middle"] = "higher"


class AlignmentConfig(_Section):
    """Dynamic time warping options."""

    unvoiced_penalty: float = Field(default=DEFAULT_UNVOICED_PENALTY_CENTS, gt=0)
    band: int | None = Field(default=None, ge=1)


class AnalysisConfig(_Section):
    """Interval aggregation and scale comparison settings."""

    min_samples: int = Field(default=DEFAULT_MIN_SAMPLES, ge=1)
    reference_scales: list[str] = Field(
        default_factory=lambda: list(DEFAULT_REFERENCE_SCALES)
    )
    tonic: str | None = Field(
        default=None, description="Tonic note label such as C4; unset = lowest note"
    )

    @field_validator("reference_scales")
    @classmethod
    def validate_scale_names(cls, v: Any) -> list[str]:
        """Scale names must exist in the reference table."""
        from src.pitch.scales import REFERENCE_SCALES

        unknown = [name for name in v if name not in REFERENCE_SCALES]
        if unknown:
            raise ValueError(f"Unknown reference scales: {unknown}")
        return v

    @field_validator("tonic")
    @classmethod
    def validate_tonic(cls, v: Any) -> str | None:
        """Tonic labels must parse as quartertone notes."""
        if v is None or not str(v).strip():
            return None
        from src.pitch.notes import QuartertoneNote

        QuartertoneNote.from_label(str(v).strip())
        return str(v).strip()


class OutputConfig(_Section):
    """Where results go and how many workers produce them."""

    output_dir: str = Field(default=DEFAULT_OUTPUT_DIR)
    jobs: int | None = Field(default=None, ge=1, le=512)

    @field_validator("output_dir")
    @classmethod
    def validate_output_dir(cls, v: Any) -> str:
        """Output directory cannot be empty."""
        if not v or not str(v).strip():
            raise ValueError("output_dir cannot be empty")
        return str(v).strip()


class RunConfig(BaseModel):
    """Complete run configuration."""

    model_config = ConfigDict(validate_assignment=True, extra="forbid")

    histogram: HistogramConfig = Field(default_factory=HistogramConfig)
    ingest: IngestConfig = Field(default_factory=IngestConfig)
    peakfit: PeakFitConfig = Field(default_factory=PeakFitConfig)
    classification: ClassificationConfig = Field(default_factory=ClassificationConfig)
    alignment: AlignmentConfig = Field(default_factory=AlignmentConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


def validate_run_config(config: RunConfig) -> list[str]:
    """
    Check for legal but suspicious combinations and return warnings.

    Args:
        config: Validated RunConfig instance

    Returns:
        List of warning messages
    """
    warnings = []

    if config.histogram.smoothing_window * config.histogram.bin_width > 30:
        warnings.append(
            "Smoothing window spans more than 30 cents; adjacent quartertone "
            "mountains may merge."
        )

    if config.alignment.band is not None and config.alignment.band < 10:
        warnings.append(
            "DTW band below 10 frames; it will be widened to the sequence "
            "length ratio when needed."
        )

    if config.classification.plateau_min_width < 2 * config.histogram.bin_width:
        warnings.append(
            "plateau_min_width is narrower than two bins; most mountains will "
            "be classified as plateaus."
        )

    return warnings
