# config.py
import logging
import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import ValidationError

from src.config_validation import RunConfig, validate_run_config
from src.constants import CONFIG_ENV_PREFIX
from src.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Flat file key -> (section, field)
CONFIG_KEYS: dict[str, tuple[str, str]] = {
    "BIN_WIDTH": ("histogram", "bin_width"),
    "SMOOTHING_WINDOW": ("histogram", "smoothing_window"),
    "MIN_PROMINENCE": ("histogram", "min_prominence"),
    "MIN_MASS": ("histogram", "min_mass"),
    "MIN_F0_HZ": ("ingest", "min_f0_hz"),
    "MAX_F0_HZ": ("ingest", "max_f0_hz"),
    "HOP_TOLERANCE": ("ingest", "hop_tolerance"),
    "FIT_MAX_ITERATIONS": ("peakfit", "max_iterations"),
    "FIT_TOLERANCE": ("peakfit", "tolerance"),
    "PEAK_GRID_STEP": ("peakfit", "grid_step"),
    "MULTI_START": ("peakfit", "multi_start"),
    "MULTI_START_COUNT": ("peakfit", "multi_start_count"),
    "PROMINENCE_FRACTION": ("classification", "prominence_fraction"),
    "PLATEAU_FRACTION": ("classification", "plateau_fraction"),
    "PLATEAU_MIN_WIDTH": ("classification", "plateau_min_width"),
    "HIDDEN_NOTE_MAX_DISTANCE": ("classification", "hidden_note_max_distance"),
    "MINOR_NOTE_MASS_FRACTION": ("classification", "minor_note_mass_fraction"),
    "RESIDUAL_FRACTION": ("classification", "residual_fraction"),
    "TYPE_III_RESOLUTION": ("classification", "type_iii_resolution"),
    "UNVOICED_PENALTY": ("alignment", "unvoiced_penalty"),
    "DTW_BAND": ("alignment", "band"),
    "MIN_SAMPLES": ("analysis", "min_samples"),
    "REFERENCE_SCALES": ("analysis", "reference_scales"),
    "TONIC": ("analysis", "tonic"),
    "OUTPUT_DIR": ("output", "output_dir"),
    "JOBS": ("output", "jobs"),
}

_LIST_KEYS = {"REFERENCE_SCALES"}
_OPTIONAL_KEYS = {"DTW_BAND", "TONIC", "JOBS"}


def _parse_value(key: str, raw: str | None) -> Any:
    """Turn a raw text value into what the pydantic field expects."""
    text = (raw or "").strip()
    if key in _LIST_KEYS:
        return [item.strip() for item in text.split(",") if item.strip()]
    if key in _OPTIONAL_KEYS and text == "":
        return None
    return text


def _format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ",".join(str(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _env_values(environ: Mapping[str, str]) -> dict[str, str]:
    return {
        key: environ[CONFIG_ENV_PREFIX + key]
        for key in CONFIG_KEYS
        if CONFIG_ENV_PREFIX + key in environ
    }


def build_run_config(values: Mapping[str, Any]) -> RunConfig:
    """
    Build a RunConfig from flat KEY -> value pairs.

    Raises:
        ConfigurationError: If a key is unknown or a value is out of range
    """
    sections: dict[str, dict[str, Any]] = {}
    for key, raw in values.items():
        norm_key = key.strip().upper()
        if norm_key not in CONFIG_KEYS:
            raise ConfigurationError(f"Unknown configuration key: {key}")
        section, field = CONFIG_KEYS[norm_key]
        value = _parse_value(norm_key, raw) if isinstance(raw, str | None) else raw
        sections.setdefault(section, {})[field] = value

    try:
        return RunConfig(**sections)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e}") from e


def load_run_config(
    path: str | os.PathLike[str] | None = None,
    overrides: Mapping[str, Any] | None = None,
    environ: Mapping[str, str] | None = None,
) -> RunConfig:
    """
    Load the run configuration.

    Precedence is defaults < RADIF_<KEY> environment variables < config file
    < explicit overrides (CLI flags).

    Args:
        path: Optional KEY=value configuration file
        overrides: Flat KEY -> value pairs that win over everything else
        environ: Environment mapping (defaults to os.environ)

    Returns:
        Validated RunConfig instance

    Raises:
        ConfigurationError: If the file is missing or any value is invalid
    """
    values: dict[str, Any] = _env_values(os.environ if environ is None else environ)

    if path is not None:
        config_path = Path(path)
        if not config_path.is_file():
            raise ConfigurationError(f"Configuration file not found: {config_path}")
        file_values = dotenv_values(config_path)
        values.update({k: v for k, v in file_values.items() if k})

    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    config = build_run_config(values)

    for warning in validate_run_config(config):
        logger.warning(warning)

    logger.debug("Configuration loaded and validated successfully")
    return config


def dump_run_config(config: RunConfig) -> str:
    """Serialize every key of the configuration as KEY=value lines."""
    lines = []
    for key, (section, field) in CONFIG_KEYS.items():
        value = getattr(getattr(config, section), field)
        lines.append(f"{key}={_format_value(value)}")
    return "\n".join(lines) + "\n"


def save_run_config(config: RunConfig, path: str | os.PathLike[str]) -> Path:
    """Write the configuration so that loading it back yields an equal config."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dump_run_config(config), encoding="utf-8")
    logger.info(f"Configuration written to {out}")
    return out
