"""Canonical data types, segmentation, and on-disk formats."""

from .io import (
    dataset_hash,
    read_analog,
    read_dataset,
    read_spike_train,
    recording_digest,
    write_analog,
    write_dataset,
    write_spike_train,
)
from .segment import (
    detect_first_contact,
    segment_contact_window,
    segment_fixed_window,
    select_taxels,
)
from .types import (
    NUSKIN_RATE_HZ,
    NUSKIN_TAXELS,
    AnalogSignal,
    Dataset,
    Label,
    Recording,
    SpikeEvent,
    SpikeTrain,
    TaxelLayout,
    default_layouts,
    min_gap_us,
    nuskin_layout,
    two_finger_layouts,
)

__all__ = [
    "AnalogSignal",
    "Dataset",
    "Label",
    "NUSKIN_RATE_HZ",
    "NUSKIN_TAXELS",
    "Recording",
    "SpikeEvent",
    "SpikeTrain",
    "TaxelLayout",
    "dataset_hash",
    "default_layouts",
    "detect_first_contact",
    "min_gap_us",
    "nuskin_layout",
    "read_analog",
    "read_dataset",
    "read_spike_train",
    "recording_digest",
    "segment_contact_window",
    "segment_fixed_window",
    "select_taxels",
    "two_finger_layouts",
    "write_analog",
    "write_dataset",
    "write_spike_train",
]
