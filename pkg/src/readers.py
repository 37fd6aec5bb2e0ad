# readers.py
"""
CSV ingestion for pitch traces, transcriptions, onsets and corpus manifests.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from src.alignment.expansion import TranscribedNote, Transcription
from src.config_validation import IngestConfig
from src.constants import (
    DEFAULT_HOP_SECONDS,
    F0_COLUMNS,
    MANIFEST_COLUMNS,
    ONSET_COLUMNS,
    TRANSCRIPTION_COLUMNS,
)
from src.exceptions import (
    InputFileError,
    MalformedRowError,
    NonMonotoneTimeError,
    NonUniformHopError,
    PitchDomainError,
)
from src.histogram.histogram import PitchTrace
from src.pitch.notes import QuartertoneNote
from src.utils import csv_line_number, read_csv_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PieceInput:
    id: str
    f0_path: Path
    transcription_path: Path
    onsets_path: Path | None = None

    def check_files(self) -> None:
        """Raises InputFileError naming the first missing file."""
        for path in (self.f0_path, self.transcription_path, self.onsets_path):
            if path is not None and not Path(path).is_file():
                raise InputFileError(str(path), f"file not found (piece {self.id})")


def _numeric_column(df: pd.DataFrame, column: str, path: str) -> np.ndarray:
    """Column as floats; the first unparseable cell is reported with its line."""
    values = pd.to_numeric(df[column].str.strip(), errors="coerce")
    bad = values.isna()
    if bad.any():
        index = int(np.flatnonzero(bad.to_numpy())[0])
        raise MalformedRowError(
            path,
            csv_line_number(index),
            f"{column}={df[column].iloc[index]!r} is not a number",
        )
    return values.to_numpy(dtype=float)


def ingest_f0(
    path: str | os.PathLike[str], config: IngestConfig | None = None
) -> PitchTrace:
    """
    Read a time_sec,f0_hz trace.

    Frames with f0 <= 0 or outside the configured band stay in the trace as
    unvoiced. The hop is the median time step; any step further than
    hop_tolerance (relative) from it is rejected.

    Raises:
        EmptyFileError, MissingColumnError, MalformedRowError,
        NonMonotoneTimeError, NonUniformHopError
    """
    config = config or IngestConfig()
    name = str(path)
    df = read_csv_file(name, F0_COLUMNS)
    times = _numeric_column(df, "time_sec", name)
    f0 = _numeric_column(df, "f0_hz", name)

    if times.size > 1:
        steps = np.diff(times)
        backwards = np.flatnonzero(steps <= 0)
        if backwards.size:
            raise NonMonotoneTimeError(
                name,
                f"time does not increase at line {csv_line_number(int(backwards[0]) + 1)}",
            )
        hop = float(np.median(steps))
        uneven = np.flatnonzero(np.abs(steps - hop) > config.hop_tolerance * hop)
        if uneven.size:
            raise NonUniformHopError(
                name,
                f"step {steps[uneven[0]]:.6f}s at line "
                f"{csv_line_number(int(uneven[0]) + 1)} deviates from hop {hop:.6f}s",
            )
    else:
        hop = DEFAULT_HOP_SECONDS

    # snap to the exact grid the trace type requires
    grid = times[0] + hop * np.arange(times.size)
    f0 = np.where(f0 > 0, f0, np.nan)
    trace = PitchTrace(grid, f0, hop).voiced_filtered(config.min_f0_hz, config.max_f0_hz)
    logger.info(
        f"Read {trace.n_frames} frames ({trace.n_voiced} voiced, hop {hop * 1000:.2f} ms) "
        f"from {os.path.basename(name)}"
    )
    return trace


def read_transcription(path: str | os.PathLike[str]) -> Transcription:
    """
    Read a note_doubled_midi,duration_sec[,label] transcription.

    Raises:
        EmptyFileError, MissingColumnError, MalformedRowError
    """
    name = str(path)
    df = read_csv_file(name, TRANSCRIPTION_COLUMNS[:2])
    midi = _numeric_column(df, "note_doubled_midi", name)
    durations = _numeric_column(df, "duration_sec", name)
    labels = (
        df["label"].str.strip().tolist()
        if TRANSCRIPTION_COLUMNS[2] in df.columns
        else [""] * len(df)
    )

    notes = []
    for index, (value, duration, label) in enumerate(
        zip(midi, durations, labels, strict=True)
    ):
        line = csv_line_number(index)
        if value != int(value):
            raise MalformedRowError(name, line, f"note_doubled_midi {value} is not an integer")
        if duration <= 0:
            raise MalformedRowError(name, line, f"duration_sec {duration} must be positive")
        try:
            note = QuartertoneNote(int(value))
        except PitchDomainError as e:
            raise MalformedRowError(name, line, str(e)) from e
        notes.append(TranscribedNote(note, float(duration), label))

    logger.info(f"Read {len(notes)} notes from {os.path.basename(name)}")
    return Transcription(tuple(notes))


def read_onsets(path: str | os.PathLike[str]) -> np.ndarray:
    """Annotated onset times in seconds, one per transcription note."""
    name = str(path)
    df = read_csv_file(name, ONSET_COLUMNS)
    return _numeric_column(df, "onset_sec", name)


def read_manifest(path: str | os.PathLike[str]) -> list[PieceInput]:
    """
    Read a piece_id,f0_path,transcription_path[,onsets_path] manifest.

    Relative paths resolve against the manifest's directory.
    """
    name = str(path)
    df = read_csv_file(name, MANIFEST_COLUMNS[:3])
    base = Path(name).resolve().parent

    def resolve(value: str) -> Path:
        candidate = Path(value.strip())
        return candidate if candidate.is_absolute() else base / candidate

    pieces = []
    seen: set[str] = set()
    for index, row in df.iterrows():
        piece_id = str(row["piece_id"]).strip()
        line = csv_line_number(int(index))
        if not piece_id:
            raise MalformedRowError(name, line, "empty piece_id")
        if piece_id in seen:
            raise MalformedRowError(name, line, f"duplicate piece_id {piece_id}")
        seen.add(piece_id)
        onsets = str(row.get("onsets_path", "") or "").strip()
        pieces.append(
            PieceInput(
                id=piece_id,
                f0_path=resolve(str(row["f0_path"])),
                transcription_path=resolve(str(row["transcription_path"])),
                onsets_path=resolve(onsets) if onsets else None,
            )
        )
    logger.info(f"Manifest {os.path.basename(name)} lists {len(pieces)} pieces")
    return pieces
