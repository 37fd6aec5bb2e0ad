import logging
import sys

from src.constants import LOG_FORMAT


def setup_logging(level: int = logging.INFO) -> None:
    """Configures logging to standard error; results go to files."""
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )
