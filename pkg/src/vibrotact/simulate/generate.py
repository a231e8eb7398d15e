"""Labeled dataset generation.

Two generators are provided:

* :func:`generate_tap_dataset` -- physics-based rod taps with known
  ground-truth positions, producible as spike-train or single-channel
  analog recordings.  Presets ``rod20`` / ``rod30`` / ``rod50`` wrap the
  three acrylic rod lengths with a calibrated encoder threshold.
* :func:`generate_surrogate_dataset` -- class-conditioned spike
  statistics (distinct slow rate modulation per class) for the
  grasp-stability and food-id classification paths, which have no
  physics model here.

All randomness descends from a single seed through ``SeedSequence``
spawning keyed by trial index, so generation is deterministic and safe
to parallelize by trial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..errors import InvalidDataError, InvalidSamplerError
from ..core.types import (
    AnalogSignal,
    Dataset,
    Label,
    Recording,
    SpikeTrain,
    default_layouts,
)
from ..core.segment import detect_first_contact, segment_contact_window
from .beam import BeamSpec, ModalBasis, TapStimulus, modal_basis
from .encoder import SpikeEncoderSpec, encode_spikes
from .pickup import GraspPickup, default_pickup, synthesize_response

PositionSampler = Union[tuple[float, float], Callable[[np.random.Generator], float]]


@dataclass(frozen=True)
class RodPreset:
    """A ready-to-run rod simulation bundle."""

    name: str
    beam: BeamSpec
    pickup: GraspPickup
    encoder: SpikeEncoderSpec
    tap_span_m: tuple[float, float]
    rate_hz: float = 4000.0
    duration_s: float = 0.4
    onset_s: float = 0.1
    impulse_ns: float = 0.02
    impulse_jitter: float = 0.3


def _reference_peak(beam: BeamSpec, pickup: GraspPickup, basis: ModalBasis,
                    rate_hz: float, impulse_ns: float) -> float:
    """Peak taxel amplitude of a noiseless mid-rod reference tap."""
    quiet = GraspPickup(
        pickup.grasp_position_m, pickup.contact_points_m, pickup.taxel_gains,
        pickup.layouts, noise_std=0.0, quantity=pickup.quantity,
    )
    tap = TapStimulus(position_m=beam.length_m / 2, impulse_ns=impulse_ns, onset_s=0.0)
    sigs = synthesize_response(beam, tap, quiet, rate_hz, 0.25, basis=basis)
    return max(float(np.abs(s.samples).max()) for s in sigs)


def rod_preset(
    length_m: float,
    name: Optional[str] = None,
    fingers: int = 2,
    seed: int = 0,
    noise_rel: float = 0.01,
    delta_rel: float = 0.025,
    rate_hz: float = 4000.0,
) -> RodPreset:
    """Acrylic rod preset; encoder threshold and sensor noise are scaled
    to the peak amplitude of a reference mid-rod tap."""
    beam = BeamSpec(length_m=length_m)
    basis = modal_basis(beam)
    pickup0 = default_pickup(beam, fingers=fingers, seed=seed)
    impulse = 0.02
    peak = _reference_peak(beam, pickup0, basis, rate_hz, impulse)
    pickup = GraspPickup(
        pickup0.grasp_position_m, pickup0.contact_points_m, pickup0.taxel_gains,
        pickup0.layouts, noise_std=noise_rel * peak, quantity=pickup0.quantity,
    )
    enc = SpikeEncoderSpec(delta_threshold=delta_rel * peak, rate_limit_hz=rate_hz)
    # Taps land on the free length only; the gripped region is unreachable.
    tap_span = (0.0, length_m - 0.05)
    return RodPreset(
        name or f"rod{int(round(length_m * 100))}",
        beam, pickup, enc, tap_span, rate_hz=rate_hz, impulse_ns=impulse,
    )


ROD_PRESETS = {"rod20": 0.20, "rod30": 0.30, "rod50": 0.50}


def make_preset(name: str, fingers: int = 2, seed: int = 0) -> RodPreset:
    if name not in ROD_PRESETS:
        raise InvalidDataError(f"unknown preset {name!r}; choose from {sorted(ROD_PRESETS)}")
    return rod_preset(ROD_PRESETS[name], name=name, fingers=fingers, seed=seed)


def _resolve_sampler(
    sampler: Optional[PositionSampler], span: tuple[float, float]
) -> Callable[[np.random.Generator], float]:
    if sampler is None:
        sampler = span
    if callable(sampler):
        return sampler
    lo, hi = float(sampler[0]), float(sampler[1])
    if not hi > lo:
        raise InvalidSamplerError(f"position sampler support [{lo}, {hi}] is degenerate")
    return lambda rng: float(rng.uniform(lo, hi))


def generate_tap_dataset(
    preset: RodPreset,
    n_taps: int,
    seed: int,
    position_sampler: Optional[PositionSampler] = None,
    payload: str = "spikes",
    segment: bool = True,
) -> Dataset:
    """``n_taps`` labeled tap recordings on one rod.

    Labels carry the exact tap position in cm from the free end.  With
    ``segment=True`` each recording is the usual contact window (50 ms
    pre to 250 ms post detected contact).
    """
    if n_taps < 1:
        raise InvalidDataError("n_taps must be >= 1")
    if payload not in ("spikes", "analog"):
        raise InvalidDataError("payload must be 'spikes' or 'analog'")
    draw = _resolve_sampler(position_sampler, preset.tap_span_m)
    basis = modal_basis(preset.beam)
    children = np.random.SeedSequence(seed).spawn(n_taps)
    recordings = []
    for i in range(n_taps):
        rng = np.random.default_rng(children[i])
        pos = draw(rng)
        if not 0 <= pos <= preset.beam.length_m:
            raise InvalidSamplerError(f"sampled position {pos} m outside the rod")
        jitter = 1.0 + preset.impulse_jitter * float(rng.uniform(-1.0, 1.0))
        tap = TapStimulus(pos, preset.impulse_ns * jitter, preset.onset_s)
        sigs = synthesize_response(
            preset.beam, tap, preset.pickup, preset.rate_hz, preset.duration_s,
            basis=basis, rng=rng,
        )
        label = Label.regression(pos * 100.0)
        meta = {
            "task": "tap-localization",
            "tool_length_cm": f"{preset.beam.length_m * 100:g}",
            "trial": str(i),
            "seed": str(seed),
        }
        if payload == "spikes":
            train = encode_spikes(sigs, preset.encoder, layouts=preset.pickup.layouts)
            rec = Recording(train, label, meta)
        else:
            pooled = np.mean([s.samples for s in sigs], axis=0)
            rec = Recording(AnalogSignal(pooled, preset.rate_hz, "PAC"), label, meta)
        if segment:
            contact = detect_first_contact(rec)
            if contact is None:
                contact = int(round(preset.onset_s * 1e6))
                rec = rec.with_meta(contact="onset-fallback")
            rec = segment_contact_window(rec, contact)
        recordings.append(rec)
    return Dataset(tuple(recordings), "tap-localization", provenance="synthetic")


# -- class-conditioned surrogates -------------------------------------------

SURROGATE_CLASSES = {
    "food-id": 7,
    "grasp-stability": 2,
}


def _rate_profile(task_id: str, class_id: int, t: np.ndarray) -> np.ndarray:
    """Per-taxel event rate (Hz) over time for one surrogate class."""
    if task_id == "food-id":
        base = 15.0 + 6.0 * class_id
        mod_hz = 0.8 + 0.9 * class_id
        return base * (1.0 + 0.8 * np.sin(2 * math.pi * mod_hz * t))
    if class_id == 0:  # stable grasp: a short settling burst
        return 150.0 * np.exp(-t / 0.05)
    return 60.0 * (1.0 + 0.9 * np.sin(2 * math.pi * 30.0 * t))  # unstable rattle


def _poisson_taxel_times(
    rate_fn: Callable[[np.ndarray], np.ndarray],
    duration_s: float,
    r_max: float,
    min_gap: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Inhomogeneous Poisson times (us) by thinning, with a refractory gap."""
    n_cand = rng.poisson(r_max * duration_s)
    if n_cand == 0:
        return np.empty(0, dtype=np.int64)
    times = np.sort(rng.uniform(0.0, duration_s, n_cand))
    accept = rng.uniform(0.0, 1.0, n_cand) < rate_fn(times) / r_max
    t_us = np.unique((times[accept] * 1e6).astype(np.int64))
    kept = []
    last = -(min_gap + 1)
    for t in t_us:
        if t - last >= min_gap:
            kept.append(t)
            last = t
    return np.array(kept, dtype=np.int64)


def generate_surrogate_dataset(
    task_id: str,
    n_per_class: int,
    seed: int,
    n_taxels: int = 80,
    duration_s: Optional[float] = None,
    rate_limit_hz: float = 4000.0,
) -> Dataset:
    """Spike recordings whose slow rate modulation separates the classes."""
    if task_id not in SURROGATE_CLASSES:
        raise InvalidDataError(f"no surrogate generator for task {task_id!r}")
    n_classes = SURROGATE_CLASSES[task_id]
    if duration_s is None:
        duration_s = 6.0 if task_id == "food-id" else 0.3
    layouts = default_layouts(n_taxels)
    duration_us = int(round(duration_s * 1e6))
    gap = int(math.floor(1e6 / rate_limit_hz))
    children = np.random.SeedSequence(seed).spawn(n_classes * n_per_class)
    recordings = []
    trial = 0
    for class_id in range(n_classes):
        for _ in range(n_per_class):
            rng = np.random.default_rng(children[trial])
            rate_fn = lambda t, c=class_id: _rate_profile(task_id, c, t)
            r_max = float(rate_fn(np.linspace(0, duration_s, 512)).max()) * 1.05 + 1.0
            all_t, all_taxel, all_pol = [], [], []
            for k in range(n_taxels):
                # Per-taxel phase offset keeps taxels decorrelated.
                phase = rng.uniform(0.0, 0.2)
                tk = _poisson_taxel_times(
                    lambda t: rate_fn(np.maximum(t - phase, 0.0)),
                    duration_s, r_max, gap, rng,
                )
                tk = tk[tk < duration_us]
                all_t.append(tk)
                all_taxel.append(np.full(len(tk), k, dtype=np.int64))
                all_pol.append(rng.choice(np.array([-1, 1], dtype=np.int8), len(tk)))
            t_cat = np.concatenate(all_t)
            taxel_cat = np.concatenate(all_taxel)
            pol_cat = np.concatenate(all_pol)
            order = np.lexsort((taxel_cat, t_cat))
            train = SpikeTrain(
                t_cat[order], taxel_cat[order], pol_cat[order],
                duration_us, layouts, rate_limit_hz,
            )
            recordings.append(
                Recording(
                    train,
                    Label.classification(class_id, n_classes),
                    {"task": task_id, "trial": str(trial), "seed": str(seed)},
                )
            )
            trial += 1
    return Dataset(tuple(recordings), task_id, provenance="synthetic-surrogate")
