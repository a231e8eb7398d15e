"""Physics-based rod-tap simulator, spike encoder, and dataset generators."""

from .beam import (
    BeamSpec,
    ModalBasis,
    TapStimulus,
    cantilever_roots,
    check_nyquist,
    modal_amplitudes,
    modal_basis,
    modal_response,
)
from .encoder import SpikeEncoderSpec, encode_spikes
from .generate import (
    ROD_PRESETS,
    RodPreset,
    generate_surrogate_dataset,
    generate_tap_dataset,
    make_preset,
    rod_preset,
)
from .pickup import GraspPickup, default_pickup, synthesize_response

__all__ = [
    "BeamSpec",
    "GraspPickup",
    "ModalBasis",
    "ROD_PRESETS",
    "RodPreset",
    "SpikeEncoderSpec",
    "TapStimulus",
    "cantilever_roots",
    "check_nyquist",
    "default_pickup",
    "encode_spikes",
    "generate_surrogate_dataset",
    "generate_tap_dataset",
    "make_preset",
    "modal_amplitudes",
    "modal_basis",
    "modal_response",
    "rod_preset",
    "synthesize_response",
]
