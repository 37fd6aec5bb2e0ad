# schemas.py
"""
Export schemas for every JSON artifact the tools write.
"""

from pydantic import BaseModel, Field


class MountainSchema(BaseModel):
    """A mountain range of the audio histogram."""

    lo: float = Field(..., description="Lower bin edge in cents.")
    hi: float = Field(..., description="Upper bin edge in cents.")
    peak_bin: float = Field(..., description="Center of the tallest bin in cents.")
    area: float = Field(..., description="Sum of smoothed counts over the range.")


class PeakSchema(BaseModel):
    """Fit diagnostics for one mountain."""

    range: MountainSchema
    model: str = Field(..., description="tilted-gaussian, quadratic or argmax.")
    params: dict[str, float]
    peak_cents: float
    rms_residual: float
    typology: str | None = None
    low_confidence: bool = False
    candidate_peaks: list[float] = Field(
        default_factory=list, description="Both peaks of a type III mountain, taller first."
    )
    notes: list[str] = Field(
        default_factory=list, description="Transcription notes aligned into this mountain."
    )


class NotePeakSchema(BaseModel):
    note: str
    doubled_midi: int
    peak_cents: float = Field(..., description="Raw audio peak in absolute cents.")
    calibrated_cents: float = Field(..., description="Peak minus the piece offset.")
    mass: float
    typology: str | None = None
    source: str = Field(..., description="audio or note-histogram.")
    low_confidence: bool = False


class IntervalSchema(BaseModel):
    lower: str
    upper: str
    size_cents: float
    piece_id: str


class CalibrationSchema(BaseModel):
    audio_shahed_cents: float
    transcription_shahed: str
    offset_cents: float


class EvaluationSchema(BaseModel):
    detected_onsets: list[float]
    deviations_ms: list[float]
    max_ms: float
    mean_ms: float
    within_bounds: bool


class HistogramSchema(BaseModel):
    bin_width: float
    origin: float = Field(..., description="Lower edge of the first bin in cents.")
    raw_counts: list[float]
    smoothed_counts: list[float] = Field(default_factory=list)


class NoteHistogramSchema(BaseModel):
    note: str
    doubled_midi: int
    histogram: HistogramSchema


class SpanSchema(BaseModel):
    index: int
    note: str
    label: str
    start: int
    stop: int


class AlignmentSchema(BaseModel):
    cost: float
    times: list[float]
    note_index: list[int] = Field(..., description="Transcription note per trace frame.")
    spans: list[SpanSchema]


class PieceBundleSchema(BaseModel):
    """Everything analyze_piece produced for one piece."""

    piece_id: str
    n_frames: int
    n_voiced: int
    hop_sec: float
    shahed: MountainSchema
    calibration: CalibrationSchema
    mountains: list[PeakSchema]
    note_peaks: list[NotePeakSchema]
    excluded_notes: list[str] = Field(
        default_factory=list, description="Notes whose peak broke the sanity bound."
    )
    intervals: list[IntervalSchema]
    histogram: HistogramSchema
    transcription_histogram: HistogramSchema
    note_histograms: list[NoteHistogramSchema]
    alignment: AlignmentSchema
    evaluation: EvaluationSchema | None = None


class IntervalStatisticSchema(BaseModel):
    interval: str
    lower: str
    upper: str
    n: int
    mean_cents: float
    sd_cents: float
    group: str


class ScaleRowSchema(BaseModel):
    degree: str
    note: str
    cents: float


class DegreeDeltaSchema(BaseModel):
    degree: str
    measured: float
    reference: float
    delta: float


class ComparisonSchema(BaseModel):
    scale: str
    rows: list[DegreeDeltaSchema]
    unmatched_measured: list[str]
    unmatched_reference: list[str]


class IntervalReportSchema(BaseModel):
    """Corpus report: aggregated intervals, scale rows and reference deltas."""

    pieces: list[str]
    failed: dict[str, str] = Field(default_factory=dict)
    n_measurements: int
    min_samples: int
    intervals: list[IntervalStatisticSchema]
    excluded: list[str] = Field(default_factory=list)
    tonic: str | None = None
    scale_rows: list[ScaleRowSchema] = Field(default_factory=list)
    scale_error: str | None = None
    comparisons: list[ComparisonSchema] = Field(default_factory=list)


class PeaksFileSchema(BaseModel):
    """peaks.json: fit diagnostics of every mountain in a piece."""

    piece_id: str
    shahed: MountainSchema
    mountains: list[PeakSchema]
