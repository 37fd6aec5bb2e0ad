# writers.py
"""
Artifact emission: per-piece plot data and corpus reports.
"""

import logging
import unicodedata
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel

from src.constants import (
    ALIGNMENT_FILENAME,
    BUNDLE_FILENAME,
    COMPARISON_FILENAME_TEMPLATE,
    CSV_FLOAT_FORMAT,
    EVALUATION_FILENAME,
    HISTOGRAM_FILENAME,
    NOTES_DIRNAME,
    PEAKS_FILENAME,
    REPORT_CSV_FILENAME,
    REPORT_JSON_FILENAME,
)
from src.error_handlers import log_exceptions
from src.schemas import (
    HistogramSchema,
    IntervalReportSchema,
    PeaksFileSchema,
    PieceBundleSchema,
)

logger = logging.getLogger(__name__)


def write_json(model: BaseModel, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.debug(f"Wrote {path}")
    return path


def file_stem(name: str) -> str:
    """ASCII-only file name part: diacritics dropped, separators kept."""
    folded = unicodedata.normalize("NFKD", name)
    ascii_name = "".join(ch for ch in folded if not unicodedata.combining(ch))
    return "".join(ch if ch.isalnum() or ch in "-_#'" else "_" for ch in ascii_name)


def histogram_centers(h: HistogramSchema) -> np.ndarray:
    return h.origin + (np.arange(len(h.raw_counts)) + 0.5) * h.bin_width


@log_exceptions(logger)
def write_histogram_csv(bundle: PieceBundleSchema, outdir: Path) -> Path:
    """bin_center_cents, raw_count, smoothed_count plus mountain and peak markers."""
    h = bundle.histogram
    centers = histogram_centers(h)
    mountain = np.full(centers.size, -1, dtype=int)
    is_peak = np.zeros(centers.size, dtype=int)
    for k, peak in enumerate(bundle.mountains):
        inside = (centers >= peak.range.lo) & (centers <= peak.range.hi)
        mountain[inside] = k
        is_peak[int(np.argmin(np.abs(centers - peak.peak_cents)))] = 1
    frame = pd.DataFrame(
        {
            "bin_center_cents": centers,
            "raw_count": h.raw_counts,
            "smoothed_count": h.smoothed_counts,
            "mountain": mountain,
            "is_peak": is_peak,
        }
    )
    return write_csv(frame, outdir / HISTOGRAM_FILENAME)


@log_exceptions(logger)
def write_note_histograms(bundle: PieceBundleSchema, outdir: Path) -> list[Path]:
    """One notes/<label>.csv per note with bin_center_cents, count."""
    paths = []
    for item in bundle.note_histograms:
        frame = pd.DataFrame(
            {
                "bin_center_cents": histogram_centers(item.histogram),
                "count": item.histogram.raw_counts,
            }
        )
        paths.append(
            write_csv(frame, outdir / NOTES_DIRNAME / f"{file_stem(item.note)}.csv")
        )
    return paths


@log_exceptions(logger)
def write_alignment_csv(bundle: PieceBundleSchema, outdir: Path) -> Path:
    """trace_frame, time_sec, note_index, note_label per trace frame."""
    labels = [span.label for span in bundle.alignment.spans]
    note_index = bundle.alignment.note_index
    frame = pd.DataFrame(
        {
            "trace_frame": np.arange(len(note_index)),
            "time_sec": bundle.alignment.times,
            "note_index": note_index,
            "note_label": [labels[k] for k in note_index],
        }
    )
    return write_csv(frame, outdir / ALIGNMENT_FILENAME)


def write_peaks_json(bundle: PieceBundleSchema, outdir: Path) -> Path:
    peaks = PeaksFileSchema(
        piece_id=bundle.piece_id, shahed=bundle.shahed, mountains=bundle.mountains
    )
    return write_json(peaks, outdir / PEAKS_FILENAME)


def write_piece_outputs(bundle: PieceBundleSchema, outdir: Path) -> Path:
    """All per-piece artifacts under outdir/<piece_id>/."""
    piece_dir = Path(outdir) / file_stem(bundle.piece_id)
    write_json(bundle, piece_dir / BUNDLE_FILENAME)
    write_peaks_json(bundle, piece_dir)
    write_histogram_csv(bundle, piece_dir)
    write_alignment_csv(bundle, piece_dir)
    write_note_histograms(bundle, piece_dir)
    if bundle.evaluation is not None:
        write_json(bundle.evaluation, piece_dir / EVALUATION_FILENAME)
    logger.info(f"Piece outputs written to {piece_dir}")
    return piece_dir


def write_corpus_outputs(report: IntervalReportSchema, outdir: Path) -> list[Path]:
    """report.json, report.csv and one comparison_<scale>.csv per reference scale."""
    outdir = Path(outdir)
    paths = [write_json(report, outdir / REPORT_JSON_FILENAME)]
    paths.append(
        write_csv(
            pd.DataFrame(
                [
                    {
                        "interval": s.interval,
                        "n": s.n,
                        "mean_cents": s.mean_cents,
                        "sd_cents": s.sd_cents,
                        "group": s.group,
                    }
                    for s in report.intervals
                ],
                columns=["interval", "n", "mean_cents", "sd_cents", "group"],
            ),
            outdir / REPORT_CSV_FILENAME,
        )
    )
    for comparison in report.comparisons:
        frame = pd.DataFrame(
            [row.model_dump() for row in comparison.rows],
            columns=["degree", "measured", "reference", "delta"],
        )
        name = COMPARISON_FILENAME_TEMPLATE.format(scale=file_stem(comparison.scale))
        paths.append(write_csv(frame, outdir / name))
    logger.info(f"Corpus report written to {outdir}")
    return paths
