# constants.py
"""
Application constants and default analysis parameters.
"""

# Pitch axis
CENTS_PER_OCTAVE = 1200.0
REFERENCE_HZ = 440.0
REFERENCE_ANCHOR_CENTS = 6900.0  # A4 on the MIDI-compatible cents axis
CENTS_PER_QUARTERTONE = 50.0
QUARTERTONES_PER_OCTAVE = 24
MAX_DOUBLED_MIDI = 254
DEFAULT_FIFTH_CENTS = 702.0
FIFTH_DEDUP_TOLERANCE_CENTS = 0.5

# Ingestion
DEFAULT_MIN_F0_HZ = 50.0
DEFAULT_MAX_F0_HZ = 2000.0
DEFAULT_HOP_TOLERANCE = 0.01
TRACE_HOP_ATOL_SECONDS = 1e-6
DEFAULT_HOP_SECONDS = 256 / 44100  # hop assumed for single-frame traces

# Histogram
DEFAULT_BIN_WIDTH = 1.0
DEFAULT_SMOOTHING_WINDOW = 15
DEFAULT_MIN_PROMINENCE = 0.05
DEFAULT_MIN_MASS = 0.02
SUPPORT_FLOOR_FRACTION = 1e-9
TRANSCRIPTION_MIN_DURATION_FRACTION = 0.02

# Peak fitting
MIN_GAUSSIAN_POINTS = 6
MIN_GAUSSIAN_SPAN_CENTS = 10.0
MIN_QUADRATIC_POINTS = 3
DEFAULT_FIT_MAX_ITERATIONS = 200
DEFAULT_FIT_TOLERANCE = 1e-10
DEFAULT_PEAK_GRID_STEP = 0.01
DEFAULT_MULTI_START_COUNT = 5

# Peak typology
DEFAULT_PROMINENCE_FRACTION = 0.10
DEFAULT_PLATEAU_FRACTION = 0.95
DEFAULT_PLATEAU_MIN_WIDTH_CENTS = 30.0
DEFAULT_HIDDEN_NOTE_MAX_DISTANCE_CENTS = 50.0
DEFAULT_MINOR_NOTE_MASS_FRACTION = 0.05
DEFAULT_RESIDUAL_FRACTION = 0.10

# Alignment
DEFAULT_UNVOICED_PENALTY_CENTS = 600.0
STEADY_ONSET_BOUND_MS = 25.0
ORNAMENT_ONSET_BOUND_MS = 55.0

# Analysis
DEFAULT_MIN_SAMPLES = 3
NOTE_PEAK_SANITY_CENTS = 100.0
LOW_VARIANCE_BAND = (5.0, 8.0)
HIGH_VARIANCE_BAND = (11.0, 14.0)
DEFAULT_REFERENCE_SCALES = ["Farhat", "Talāi", "Vaziri"]

# Files
CSV_SEPARATOR = ","
CSV_ENCODING_DETECTION_BYTES = 1024
CSV_FLOAT_FORMAT = "%.6f"
F0_COLUMNS = ("time_sec", "f0_hz")
TRANSCRIPTION_COLUMNS = ("note_doubled_midi", "duration_sec", "label")
ONSET_COLUMNS = ("onset_sec",)
MANIFEST_COLUMNS = ("piece_id", "f0_path", "transcription_path", "onsets_path")
CONFIG_ENV_PREFIX = "RADIF_"

# Output layout
DEFAULT_OUTPUT_DIR = "./output"
HISTOGRAM_FILENAME = "histogram.csv"
PEAKS_FILENAME = "peaks.json"
ALIGNMENT_FILENAME = "alignment.csv"
NOTES_DIRNAME = "notes"
BUNDLE_FILENAME = "bundle.json"
EVALUATION_FILENAME = "evaluation.json"
REPORT_JSON_FILENAME = "report.json"
REPORT_CSV_FILENAME = "report.csv"
COMPARISON_FILENAME_TEMPLATE = "comparison_{scale}.csv"

# CLI exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ANALYSIS_ERROR = 2

# Logging format
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Quartertone pitch-class names, indexed by doubled MIDI number mod 24.
# "k" is koron (about a quartertone flat), "s" is sori (about a quartertone sharp).
PITCH_CLASS_NAMES: tuple[str, ...] = (
    "C",
    "Cs",
    "Db",
    "Dk",
    "D",
    "Ds",
    "Eb",
    "Ek",
    "E",
    "Es",
    "F",
    "Fs",
    "F#",
    "Gk",
    "G",
    "Gs",
    "Ab",
    "Ak",
    "A",
    "As",
    "Bb",
    "Bk",
    "B",
    "Bs",
)

SUPPORTED_PLOT_KINDS: dict[str, str] = {
    "histogram": "Raw and smoothed pitch histogram with peak markers",
    "note-histogram": "Per-note histograms from the aligned transcription",
    "alignment": "Frame-to-note alignment of the pitch trace",
}
