from src.pitch.cents import (
    circle_of_fifths_scale,
    hz_array_to_cents,
    hz_to_cents,
    ratio_to_cents,
)
from src.pitch.notes import QuartertoneNote, degree_label, pitch_class_name
from src.pitch.scales import (
    REFERENCE_SCALES,
    ReferenceScale,
    reference_scale,
    scales_document,
)

__all__ = [
    "REFERENCE_SCALES",
    "QuartertoneNote",
    "ReferenceScale",
    "circle_of_fifths_scale",
    "degree_label",
    "hz_array_to_cents",
    "hz_to_cents",
    "pitch_class_name",
    "ratio_to_cents",
    "reference_scale",
    "scales_document",
]
