# services.py
"""
Pipeline orchestration: one piece, a corpus, scale comparison and plot data.
"""

import logging
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError
from tqdm import tqdm

from src.alignment import (
    NoteSpan,
    dtw_align,
    evaluate_alignment,
    expand_transcription,
    note_histograms,
    note_spans_from_path,
    transcription_histogram,
)
from src.alignment.spans import frame_assignment
from src.analysis import (
    IntervalMeasurement,
    IntervalReport,
    IntervalStatistic,
    NotePeak,
    aggregate,
    calibrate_offset,
    compare_to_reference,
    extract_intervals,
    scale_rows,
    variance_group,
)
from src.config_validation import RunConfig
from src.constants import SUPPORTED_PLOT_KINDS
from src.error_handlers import ErrorContext
from src.exceptions import (
    CorpusAnalysisError,
    EmptyInputError,
    InputFileError,
    ParameterError,
    PieceAnalysisError,
    RadifAnalysisError,
    ScaleChainGapError,
)
from src.histogram import (
    Histogram,
    MountainRange,
    PitchTrace,
    build_histogram,
    find_mountain_ranges,
    find_shahed,
    smooth,
)
from src.peakfit import PeakModel, apply_classification, classify_peak, refine_peak
from src.pitch import QuartertoneNote, reference_scale
from src.readers import PieceInput, ingest_f0, read_onsets, read_transcription
from src.schemas import (
    AlignmentSchema,
    CalibrationSchema,
    ComparisonSchema,
    DegreeDeltaSchema,
    EvaluationSchema,
    HistogramSchema,
    IntervalReportSchema,
    IntervalSchema,
    IntervalStatisticSchema,
    MountainSchema,
    NoteHistogramSchema,
    NotePeakSchema,
    PeakSchema,
    PieceBundleSchema,
    ScaleRowSchema,
    SpanSchema,
)
from src.writers import (
    write_alignment_csv,
    write_histogram_csv,
    write_note_histograms,
)

logger = logging.getLogger(__name__)

_Model = TypeVar("_Model", bound=BaseModel)


@dataclass
class PieceResult:
    bundle: PieceBundleSchema
    measurements: list[IntervalMeasurement]


@dataclass
class CorpusResult:
    report: IntervalReportSchema
    interval_report: IntervalReport
    bundles: dict[str, PieceBundleSchema] = field(default_factory=dict)


def _mountain_schema(r: MountainRange) -> MountainSchema:
    return MountainSchema(lo=r.lo, hi=r.hi, peak_bin=r.peak_bin, area=r.area)


def _histogram_schema(raw: Histogram, smoothed: Histogram | None = None) -> HistogramSchema:
    return HistogramSchema(
        bin_width=raw.bin_width,
        origin=raw.origin,
        raw_counts=raw.counts.tolist(),
        smoothed_counts=smoothed.counts.tolist() if smoothed is not None else [],
    )


def _note_frames(trace: PitchTrace, spans: Sequence[NoteSpan]) -> dict[QuartertoneNote, np.ndarray]:
    """Voiced cents per distinct note across all its spans."""
    frames: dict[QuartertoneNote, list[np.ndarray]] = {}
    for span in spans:
        frames.setdefault(span.note, []).append(trace.cents[span.start : span.stop])
    merged = {}
    for note, parts in frames.items():
        cents = np.concatenate(parts)
        cents = cents[~np.isnan(cents)]
        if cents.size:
            merged[note] = cents
    return merged


def _note_histogram_peak(h: Histogram, config: RunConfig) -> PeakModel | None:
    """Refined peak of the largest mountain of a note's own histogram."""
    smoothed = smooth(h, config.histogram.smoothing_window)
    ranges = find_mountain_ranges(
        smoothed, config.histogram.min_prominence, config.histogram.min_mass
    )
    if not ranges:
        return None
    largest = max(ranges, key=lambda r: (r.area, -r.lo))
    return refine_peak(smoothed, largest, config.peakfit)


def analyze_piece(piece: PieceInput, config: RunConfig | None = None) -> PieceResult:
    """
    Run the full pipeline on one piece.

    Raises:
        PieceAnalysisError: Wrapping any analysis failure with the piece id
        InputFileError: For unreadable inputs (names the file and row)
    """
    config = config or RunConfig()
    hist_cfg = config.histogram
    try:
        with ErrorContext(f"Reading inputs of {piece.id}", logger):
            trace = ingest_f0(piece.f0_path, config.ingest)
            transcription = read_transcription(piece.transcription_path)
            onsets = read_onsets(piece.onsets_path) if piece.onsets_path else None

        with ErrorContext(f"Histogram of {piece.id}", logger):
            if trace.n_voiced == 0:
                raise EmptyInputError("All frames are unvoiced")
            raw = build_histogram(trace, hist_cfg.bin_width, hist_cfg.smoothing_window)
            smoothed = smooth(raw, hist_cfg.smoothing_window)
            ranges = find_mountain_ranges(
                smoothed, hist_cfg.min_prominence, hist_cfg.min_mass
            )
            if not ranges:
                raise EmptyInputError("No mountain passes the detection thresholds")
            shahed = find_shahed(raw, ranges)

        with ErrorContext(f"Peak fitting of {piece.id}", logger):
            fits = [refine_peak(smoothed, r, config.peakfit) for r in ranges]
            shahed_fit = fits[ranges.index(shahed)]
            calibration = calibrate_offset(shahed_fit, transcription)

        with ErrorContext(f"Alignment of {piece.id}", logger):
            expansion = expand_transcription(transcription, trace.n_frames)
            path = dtw_align(
                trace.cents - calibration.offset,
                expansion.cents,
                config.alignment.unvoiced_penalty,
                config.alignment.band,
            )
            spans = note_spans_from_path(path, transcription)
            assignment = frame_assignment(path, expansion.note_of_frame)
            per_note = note_histograms(
                trace, spans, hist_cfg.bin_width, hist_cfg.smoothing_window
            )
            evaluation = (
                evaluate_alignment(spans, onsets, trace.times) if onsets is not None else None
            )

        with ErrorContext(f"Note peaks of {piece.id}", logger):
            note_cents = _note_frames(trace, spans)
            models, mountain_notes = _classify_mountains(
                smoothed, ranges, fits, note_cents, config
            )
            note_peaks, excluded = _note_peaks(
                piece.id, note_cents, ranges, models, per_note, calibration.offset, config
            )
            if len(note_peaks) >= 2:
                measurements = extract_intervals(note_peaks)
            else:
                logger.warning(f"[{piece.id}] Fewer than two note peaks; no intervals")
                measurements = []
    except InputFileError:
        raise
    except RadifAnalysisError as e:
        raise PieceAnalysisError(piece.id, str(e)) from e
    except Exception as e:
        raise PieceAnalysisError(piece.id, f"{type(e).__name__}: {e}") from e

    bundle = PieceBundleSchema(
        piece_id=piece.id,
        n_frames=trace.n_frames,
        n_voiced=trace.n_voiced,
        hop_sec=trace.hop,
        shahed=_mountain_schema(shahed),
        calibration=CalibrationSchema(
            audio_shahed_cents=calibration.audio_shahed_cents,
            transcription_shahed=calibration.transcription_shahed.label,
            offset_cents=calibration.offset,
        ),
        mountains=[
            PeakSchema(
                range=_mountain_schema(r),
                model=str(m.model),
                params=m.params,
                peak_cents=m.peak_cents,
                rms_residual=m.rms_residual,
                typology=str(m.typology) if m.typology else None,
                low_confidence=m.low_confidence,
                candidate_peaks=list(m.candidate_peaks),
                notes=[note.label for note in mountain_notes[k]],
            )
            for k, (r, m) in enumerate(zip(ranges, models, strict=True))
        ],
        note_peaks=[
            NotePeakSchema(
                note=p.note.label,
                doubled_midi=p.note.doubled_midi,
                peak_cents=p.peak_cents,
                calibrated_cents=p.calibrated_cents,
                mass=p.mass,
                typology=str(p.typology) if p.typology else None,
                source=p.source,
                low_confidence=p.low_confidence,
            )
            for p in note_peaks
        ],
        excluded_notes=excluded,
        intervals=[
            IntervalSchema(
                lower=m.lower_note.label,
                upper=m.upper_note.label,
                size_cents=m.size,
                piece_id=m.piece_id,
            )
            for m in measurements
        ],
        histogram=_histogram_schema(raw, smoothed),
        transcription_histogram=_histogram_schema(
            transcription_histogram(
                transcription, hist_cfg.bin_width, padding_bins=hist_cfg.smoothing_window
            )
        ),
        note_histograms=[
            NoteHistogramSchema(
                note=note.label, doubled_midi=note.doubled_midi, histogram=_histogram_schema(h)
            )
            for note, h in per_note
        ],
        alignment=AlignmentSchema(
            cost=path.cost,
            times=trace.times.tolist(),
            note_index=assignment.tolist(),
            spans=[
                SpanSchema(
                    index=s.index, note=s.note.label, label=s.label, start=s.start, stop=s.stop
                )
                for s in spans
            ],
        ),
        evaluation=(
            EvaluationSchema(
                detected_onsets=list(evaluation.detected_onsets),
                deviations_ms=list(evaluation.deviations_ms),
                max_ms=evaluation.max_ms,
                mean_ms=evaluation.mean_ms,
                within_bounds=evaluation.within_bounds(),
            )
            if evaluation is not None
            else None
        ),
    )
    logger.info(
        f"[{piece.id}] {len(ranges)} mountains, {len(note_peaks)} note peaks, "
        f"{len(measurements)} intervals"
    )
    return PieceResult(bundle=bundle, measurements=measurements)


def _classify_mountains(
    smoothed: Histogram,
    ranges: list[MountainRange],
    fits: list[PeakModel],
    note_cents: dict[QuartertoneNote, np.ndarray],
    config: RunConfig,
) -> tuple[list[PeakModel], list[list[QuartertoneNote]]]:
    """Classify every mountain using the aligned frames that fall inside it."""
    models = []
    mountain_notes = []
    for r, fit in zip(ranges, fits, strict=True):
        aligned = [
            (note, float(np.count_nonzero((cents >= r.lo) & (cents <= r.hi))))
            for note, cents in sorted(note_cents.items())
        ]
        aligned = [(note, mass) for note, mass in aligned if mass > 0]
        classification = classify_peak(smoothed, r, fit, aligned, config.classification)
        models.append(
            apply_classification(
                fit, classification, config.classification.type_iii_resolution
            )
        )
        mountain_notes.append([note for note, _ in aligned])
    return models, mountain_notes


def _note_peaks(
    piece_id: str,
    note_cents: dict[QuartertoneNote, np.ndarray],
    ranges: list[MountainRange],
    models: list[PeakModel],
    per_note: list[tuple[QuartertoneNote, Histogram]],
    offset: float,
    config: RunConfig,
) -> tuple[list[NotePeak], list[str]]:
    """
    One peak per note: the audio mountain holding the note's median pitch, or
    the note's own histogram when that mountain is shared or missing.
    """
    owner: dict[QuartertoneNote, int | None] = {}
    for note, cents in sorted(note_cents.items()):
        center = float(np.median(cents))
        owner[note] = next(
            (k for k, r in enumerate(ranges) if r.contains(center)), None
        )
    claims: dict[int, int] = {}
    for k in owner.values():
        if k is not None:
            claims[k] = claims.get(k, 0) + 1
    note_hist = dict(per_note)

    peaks: list[NotePeak] = []
    excluded: list[str] = []
    for note, k in owner.items():
        mass = float(note_cents[note].size)
        if k is not None and claims[k] == 1:
            model = models[k]
            peak = NotePeak(
                note, model.peak_cents, mass, piece_id, model.typology, offset,
                model.low_confidence, "audio",
            )
        else:
            own = _note_histogram_peak(note_hist[note], config) if note in note_hist else None
            if own is None:
                logger.warning(f"[{piece_id}] No peak found for {note.label}")
                excluded.append(note.label)
                continue
            typology = models[k].typology if k is not None else None
            peak = NotePeak(
                note, own.peak_cents, mass, piece_id, typology, offset,
                True if k is None else own.low_confidence, "note-histogram",
            )
        if not peak.within_sanity_bound():
            logger.warning(
                f"[{piece_id}] {note.label} peak {peak.calibrated_cents:.1f} is "
                f"{peak.deviation:+.1f} cents from nominal; excluded"
            )
            excluded.append(note.label)
            continue
        peaks.append(peak)
    return peaks, excluded


def _analyze_worker(piece: PieceInput, config: RunConfig) -> PieceResult:
    return analyze_piece(piece, config)


def _collect(
    piece_id: str,
    run: Callable[[], PieceResult],
    results: dict[str, PieceResult],
    failed: dict[str, str],
) -> None:
    """Store one piece's result, or record why it failed and carry on."""
    try:
        with ErrorContext(f"Analysis of piece {piece_id}", logger):
            results[piece_id] = run()
    except Exception as e:
        if isinstance(e, RadifAnalysisError):
            failed[piece_id] = str(e)
        else:
            failed[piece_id] = f"{type(e).__name__}: {e}"
        logger.warning(f"Skipping piece {piece_id}: {failed[piece_id]}")


def analyze_corpus(
    pieces: Sequence[PieceInput],
    config: RunConfig | None = None,
    jobs: int | None = None,
    show_progress: bool = False,
) -> CorpusResult:
    """
    Analyze every piece, then aggregate intervals and compare with reference scales.

    A failing piece is logged and skipped; the run fails only if all pieces do.
    Results merge in piece_id order, so the worker count never changes the report.

    Raises:
        CorpusAnalysisError: Empty input or no piece succeeded
    """
    config = config or RunConfig()
    if not pieces:
        raise CorpusAnalysisError("No pieces to analyze")
    ids = [piece.id for piece in pieces]
    if len(set(ids)) != len(ids):
        raise CorpusAnalysisError("Piece ids must be unique")
    workers = jobs or config.output.jobs or os.cpu_count() or 1
    workers = min(workers, len(pieces))

    results: dict[str, PieceResult] = {}
    failed: dict[str, str] = {}
    logger.info(f"Analyzing {len(pieces)} pieces with {workers} worker(s)")

    if workers == 1:
        for piece in tqdm(pieces, desc="Pieces", disable=not show_progress):
            _collect(piece.id, partial(analyze_piece, piece, config), results, failed)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_analyze_worker, piece, config): piece.id for piece in pieces
            }
            for future in tqdm(
                as_completed(futures), total=len(futures), desc="Pieces", disable=not show_progress
            ):
                _collect(futures[future], future.result, results, failed)

    if not results:
        raise CorpusAnalysisError(f"All {len(pieces)} pieces failed")

    measurements = [
        m for piece_id in sorted(results) for m in results[piece_id].measurements
    ]
    if not measurements:
        raise CorpusAnalysisError("No interval could be measured in any piece")
    interval_report = aggregate(measurements, config.analysis.min_samples)
    report = build_report_schema(
        interval_report,
        config,
        pieces=sorted(results),
        failed=dict(sorted(failed.items())),
    )
    return CorpusResult(
        report=report,
        interval_report=interval_report,
        bundles={piece_id: results[piece_id].bundle for piece_id in sorted(results)},
    )


def build_report_schema(
    interval_report: IntervalReport,
    config: RunConfig,
    pieces: Sequence[str] = (),
    failed: dict[str, str] | None = None,
    tonic: QuartertoneNote | None = None,
    scales: Sequence[str] | None = None,
) -> IntervalReportSchema:
    """Report schema with scale rows and comparisons against the chosen scales."""
    if tonic is None and config.analysis.tonic:
        tonic = QuartertoneNote.from_label(config.analysis.tonic)
    scale_names = list(scales) if scales is not None else config.analysis.reference_scales

    rows_schema: list[ScaleRowSchema] = []
    comparisons: list[ComparisonSchema] = []
    scale_error = None
    try:
        rows = scale_rows(interval_report, tonic) if interval_report.intervals else []
    except (ScaleChainGapError, ParameterError) as e:
        logger.warning(f"Scale rows unavailable: {e}")
        rows, scale_error = [], str(e)

    if rows:
        rows_schema = [
            ScaleRowSchema(degree=row.label, note=row.note.label, cents=row.cents)
            for row in rows
        ]
        for name in scale_names:
            try:
                comparison = compare_to_reference(rows, reference_scale(name))
            except ParameterError as e:
                logger.warning(f"Skipping comparison with {name}: {e}")
                continue
            comparisons.append(
                ComparisonSchema(
                    scale=comparison.scale_name,
                    rows=[
                        DegreeDeltaSchema(
                            degree=d.label, measured=d.measured, reference=d.reference, delta=d.delta
                        )
                        for d in comparison.deltas
                    ],
                    unmatched_measured=list(comparison.unmatched_measured),
                    unmatched_reference=list(comparison.unmatched_reference),
                )
            )

    return IntervalReportSchema(
        pieces=list(pieces) or list(interval_report.piece_ids),
        failed=failed or {},
        n_measurements=interval_report.n_measurements,
        min_samples=config.analysis.min_samples,
        intervals=[
            IntervalStatisticSchema(
                interval=s.name,
                lower=s.lower.label,
                upper=s.upper.label,
                n=s.n_samples,
                mean_cents=s.mean,
                sd_cents=s.sd,
                group=str(s.group),
            )
            for s in interval_report.intervals
        ],
        excluded=list(interval_report.excluded),
        tonic=rows[0].note.label if rows else None,
        scale_rows=rows_schema,
        scale_error=scale_error,
        comparisons=comparisons,
    )


def report_from_schema(schema: IntervalReportSchema) -> IntervalReport:
    """Rebuild the interval statistics of a saved report."""
    return IntervalReport(
        intervals=tuple(
            IntervalStatistic(
                lower=QuartertoneNote.from_label(s.lower),
                upper=QuartertoneNote.from_label(s.upper),
                n_samples=s.n,
                mean=s.mean_cents,
                sd=s.sd_cents,
                group=variance_group(s.sd_cents),
            )
            for s in schema.intervals
        ),
        piece_ids=tuple(schema.pieces),
        n_measurements=schema.n_measurements,
        excluded=tuple(schema.excluded),
    )


def compare_report(
    schema: IntervalReportSchema,
    config: RunConfig,
    tonic: QuartertoneNote | None = None,
    scales: Sequence[str] | None = None,
) -> IntervalReportSchema:
    """Recompute scale rows and comparisons of a saved report."""
    return build_report_schema(
        report_from_schema(schema),
        config,
        pieces=schema.pieces,
        failed=schema.failed,
        tonic=tonic,
        scales=scales,
    )


_PLOT_WRITERS: dict[str, Callable[[PieceBundleSchema, Path], object]] = {
    "histogram": write_histogram_csv,
    "note-histogram": write_note_histograms,
    "alignment": write_alignment_csv,
}


def emit_plot_data(bundle: PieceBundleSchema, kind: str, outdir: str | os.PathLike[str]) -> object:
    """
    Write the data behind one figure type for a piece.

    Raises:
        ParameterError: Unknown kind, or the bundle lacks that data
    """
    if kind not in SUPPORTED_PLOT_KINDS:
        raise ParameterError(
            f"Unknown plot kind '{kind}'. Supported: {', '.join(SUPPORTED_PLOT_KINDS)}"
        )
    missing = {
        "histogram": not bundle.histogram.raw_counts,
        "note-histogram": not bundle.note_histograms,
        "alignment": not bundle.alignment.note_index,
    }
    if missing[kind]:
        raise ParameterError(f"Bundle of {bundle.piece_id} holds no {kind} data")
    return _PLOT_WRITERS[kind](bundle, Path(outdir))


def _read_model(path: str | os.PathLike[str], model: type[_Model]) -> _Model:
    try:
        return model.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputFileError(str(path), f"cannot read file: {e.strerror or e}") from e
    except ValidationError as e:
        raise InputFileError(
            str(path), f"not a valid {model.__name__}: {e.error_count()} error(s)"
        ) from e


def load_bundle(path: str | os.PathLike[str]) -> PieceBundleSchema:
    """Read a bundle.json written by analyze."""
    return _read_model(path, PieceBundleSchema)


def load_report(path: str | os.PathLike[str]) -> IntervalReportSchema:
    """Read a report.json written by corpus."""
    return _read_model(path, IntervalReportSchema)
