# utils.py
import logging
import os
from collections.abc import Sequence

import chardet
import pandas as pd

from src.constants import CSV_ENCODING_DETECTION_BYTES, CSV_SEPARATOR
from src.exceptions import EmptyFileError, InputFileError, MissingColumnError

logger = logging.getLogger(__name__)


def print_header(title: str = "Radif Interval Analysis") -> None:
    """Prints a stylized header using logging."""
    logger.info("=" * 80)
    logger.info(title)
    logger.info("=" * 80)


def print_progress(message: str) -> None:
    """Logs a progress message."""
    logger.info(message)


# Encoding and file reading
def detect_encoding(file_path: str | os.PathLike[str]) -> str | None:
    """Detect encoding of a file."""
    try:
        with open(file_path, "rb") as file:
            raw_data = file.read(
                CSV_ENCODING_DETECTION_BYTES
            )  # Read only first bytes for speed
        result = chardet.detect(raw_data)
        logger.debug(
            f"Detected encoding {result['encoding']} with confidence {result['confidence']} for {os.path.basename(file_path)}"
        )
        return result["encoding"]
    except OSError as e:
        logger.error(f"Error detecting encoding for {file_path}: {e}")
        return None


def read_csv_file(
    file_path: str | os.PathLike[str],
    required_columns: Sequence[str] = (),
) -> pd.DataFrame:
    """
    Read a comma-separated file as strings, trying the detected encoding first.

    Header names are stripped and lower-cased.

    Raises:
        InputFileError: If the file is missing or cannot be decoded
        EmptyFileError: If the file has no data rows
        MissingColumnError: If a required column is absent
    """
    path = str(file_path)
    if not os.path.isfile(path):
        raise InputFileError(path, "file not found")

    detected_encoding = detect_encoding(path)
    # F0 trackers and spreadsheets mostly write one of these
    encodings = [detected_encoding] if detected_encoding else []
    encodings.extend(["utf-8", "utf-8-sig", "utf-16", "iso-8859-1", "windows-1252"])

    # Remove duplicates while preserving order
    for encoding in list(dict.fromkeys(encodings)):
        if not encoding:
            continue
        try:
            df = pd.read_csv(
                path,
                encoding=encoding,
                sep=CSV_SEPARATOR,
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
            )
        except pd.errors.EmptyDataError as e:
            raise EmptyFileError(path, "file is empty") from e
        except (UnicodeDecodeError, UnicodeError, pd.errors.ParserError) as e:
            logger.debug(
                f"Failed to read {os.path.basename(path)} with encoding {encoding}: {e}"
            )
            continue

        logger.debug(f"Successfully read {os.path.basename(path)} with encoding {encoding}")
        df.columns = [str(column).strip().lower() for column in df.columns]
        missing = [column for column in required_columns if column not in df.columns]
        if missing:
            raise MissingColumnError(
                path, f"missing column(s) {', '.join(missing)}; found {list(df.columns)}"
            )
        if df.empty:
            raise EmptyFileError(path, "no data rows")
        return df

    raise InputFileError(path, "unable to determine encoding or parse as CSV")


def csv_line_number(row_index: int) -> int:
    """File line of a data row (header is line 1)."""
    return row_index + 2
