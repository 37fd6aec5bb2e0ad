# exceptions.py
"""
Custom exception classes for the radif interval tools.
"""


class RadifAnalysisError(Exception):
    """Base exception for analysis errors."""

    pass


class PitchDomainError(RadifAnalysisError, ValueError):
    """Raised when a pitch conversion receives a non-positive ratio or frequency."""

    pass


class UnknownScaleError(RadifAnalysisError, LookupError):
    """Raised when a reference scale name is not known."""

    pass


class ParameterError(RadifAnalysisError, ValueError):
    """Raised when an operation receives an out-of-range parameter."""

    pass


class EmptyInputError(RadifAnalysisError):
    """Raised when there is nothing to analyze (e.g., no voiced frames)."""

    pass


class PeakFitError(RadifAnalysisError):
    """Base exception for curve fit failures; callers fall back to simpler models."""

    pass


class FitPreconditionError(PeakFitError):
    """Raised when a mountain has too few points for the requested model."""

    pass


class FitConvergenceError(PeakFitError):
    """Raised when a fit does not converge or yields an invalid shape."""

    pass


class ScaleChainGapError(RadifAnalysisError):
    """Raised when mean intervals do not form a connected chain from the tonic."""

    def __init__(self, message: str, missing_degree: str) -> None:
        super().__init__(message)
        self.missing_degree = missing_degree

    def __reduce__(self):
        return type(self), (self.args[0], self.missing_degree)


class PieceAnalysisError(RadifAnalysisError):
    """Raised when one piece of a corpus fails; carries the piece id."""

    def __init__(self, piece_id: str, message: str) -> None:
        super().__init__(f"[{piece_id}] {message}")
        self.piece_id = piece_id
        self.message = message

    def __reduce__(self):
        return type(self), (self.piece_id, self.message)


class CorpusAnalysisError(RadifAnalysisError):
    """Raised when no piece of a corpus could be analyzed."""

    pass


class InputFileError(RadifAnalysisError):
    """Base exception for unreadable or invalid input files."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message

    def __reduce__(self):
        return type(self), (self.path, self.message)


class EmptyFileError(InputFileError):
    """Raised when an input file has no data rows."""

    pass


class MissingColumnError(InputFileError):
    """Raised when a CSV header lacks a required column."""

    pass


class MalformedRowError(InputFileError):
    """Raised when a CSV row cannot be parsed."""

    def __init__(self, path: str, row: int, message: str) -> None:
        super().__init__(path, f"line {row}: {message}")
        self.row = row
        self.row_message = message

    def __reduce__(self):
        return type(self), (self.path, self.row, self.row_message)


class NonMonotoneTimeError(InputFileError):
    """Raised when pitch-trace timestamps are not strictly increasing."""

    pass


class NonUniformHopError(InputFileError):
    """Raised when pitch-trace time steps deviate from the median hop."""

    pass


class ConfigurationError(Exception):
    """Raised when configuration is invalid or missing."""

    pass
