# calibration.py
import logging
from dataclasses import dataclass

from src.alignment.expansion import Transcription, transcription_shahed
from src.histogram.mountains import MountainRange
from src.peakfit.models import PeakModel
from src.pitch.notes import QuartertoneNote

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Calibration:
    """
    Offset between the sung pitch and the notated pitch, anchored on the shāhed.

    corrected(cents) maps an audio peak onto the transcription's axis.
    """

    offset: float
    audio_shahed_cents: float
    transcription_shahed: QuartertoneNote

    def corrected(self, cents: float) -> float:
        return cents - self.offset


def calibrate_offset(
    audio_shahed: float | MountainRange | PeakModel,
    transcription: Transcription,
) -> Calibration:
    """
    Offset = audio shāhed peak minus the nominal cents of the transcription shāhed.

    The transcription shāhed is the note with the longest total duration,
    the earlier note on ties.
    """
    if isinstance(audio_shahed, MountainRange):
        peak = audio_shahed.peak_bin
    elif isinstance(audio_shahed, PeakModel):
        peak = audio_shahed.peak_cents
    else:
        peak = float(audio_shahed)

    shahed = transcription_shahed(transcription)
    offset = peak - shahed.nominal_cents
    logger.info(
        f"Shāhed: audio {peak:.2f} cents, transcription {shahed.label} "
        f"({shahed.nominal_cents:.0f}); offset {offset:+.2f} cents"
    )
    return Calibration(offset=offset, audio_shahed_cents=peak, transcription_shahed=shahed)
