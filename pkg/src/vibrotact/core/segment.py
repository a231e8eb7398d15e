"""Recording segmentation and taxel selection.

Windows are half-open ``[start, end)`` in microseconds and the returned
payload is re-based so the window start is t=0.  Segmentation is pure and
idempotent; labels pass through unchanged.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ..errors import InvalidSelectionError, InvalidWindowError
from .types import AnalogSignal, Recording, SpikeTrain, TaxelLayout, min_gap_us

CONTACT_PRE_US = 50_000
CONTACT_POST_US = 250_000

# Declared defaults for first-contact detection (configurable, see below).
ANALOG_BASELINE_US = 20_000
ANALOG_THRESHOLD_SIGMA = 5.0
SPIKE_BIN_US = 1_000
SPIKE_COUNT_THRESHOLD = 2


def _slice_window(rec: Recording, start_us: int, end_us: int, pad: bool) -> Recording:
    """Restrict the payload to [start_us, end_us) and re-base to zero."""
    length_us = end_us - start_us
    meta = dict(rec.meta)
    payload = rec.payload
    if isinstance(payload, SpikeTrain):
        if start_us >= payload.duration_us or end_us <= 0:
            raise InvalidWindowError(
                f"window [{start_us}, {end_us}) us outside recording span "
                f"[0, {payload.duration_us}) us"
            )
        if not pad and (start_us < 0 or end_us > payload.duration_us):
            raise InvalidWindowError("window extends beyond recording span")
        if start_us < 0 or end_us > payload.duration_us:
            meta["padded"] = "true"
        keep = (payload.t_us >= start_us) & (payload.t_us < end_us)
        new = SpikeTrain(
            payload.t_us[keep] - start_us,
            payload.taxel[keep],
            payload.polarity[keep],
            duration_us=length_us,
            layouts=payload.layouts,
            nominal_rate_hz=payload.nominal_rate_hz,
        )
        if new.n_events == 0:
            meta["empty"] = "true"
        return Recording(new, rec.label, meta)

    rate = payload.rate_hz
    i0 = int(np.ceil(start_us * rate / 1e6 - 1e-9))
    i1 = int(np.ceil(end_us * rate / 1e6 - 1e-9))
    n = payload.n_samples
    if i0 >= n or i1 <= 0:
        raise InvalidWindowError(
            f"window [{start_us}, {end_us}) us outside recording span "
            f"[0, {payload.duration_us}) us"
        )
    if not pad and (i0 < 0 or i1 > n):
        raise InvalidWindowError("window extends beyond recording span")
    out = np.zeros(i1 - i0, dtype=np.float64)
    lo, hi = max(i0, 0), min(i1, n)
    out[lo - i0 : hi - i0] = payload.samples[lo:hi]
    if i0 < 0 or i1 > n:
        meta["padded"] = "true"
    new_sig = AnalogSignal(out, rate, payload.channel_name)
    return Recording(new_sig, rec.label, meta)


def segment_contact_window(rec: Recording, contact_t_us: int) -> Recording:
    """Extract [contact - 50 ms, contact + 250 ms), re-based to zero.

    Regions outside the recording span are padded (zeros for analog,
    silence for spikes) and flagged ``padded=true`` in metadata.
    """
    if contact_t_us < 0 or contact_t_us > rec.duration_us:
        raise InvalidWindowError("contact time outside recording span")
    out = _slice_window(
        rec, contact_t_us - CONTACT_PRE_US, contact_t_us + CONTACT_POST_US, pad=True
    )
    return out.with_meta(contact_t_us=str(contact_t_us))


def segment_fixed_window(rec: Recording, start_s: float, end_s: float) -> Recording:
    """Restrict the payload to [start_s, end_s) seconds, re-based to zero."""
    if start_s >= end_s:
        raise InvalidWindowError("start_s must precede end_s")
    return _slice_window(
        rec, int(round(start_s * 1e6)), int(round(end_s * 1e6)), pad=False
    )


def detect_first_contact(
    rec: Recording,
    threshold: Optional[float] = None,
) -> Optional[int]:
    """Earliest contact time in microseconds, or ``None`` if never detected.

    Analog payloads: first sample whose deviation from the pre-window
    baseline (mean of the first 20 ms) exceeds ``threshold`` sensor units;
    default threshold is 5x the baseline standard deviation.

    Spike payloads: first time a 1 ms bin holds >= ``threshold`` events
    (default 2); returns the time of the first event in that bin.
    """
    payload = rec.payload
    if isinstance(payload, SpikeTrain):
        thr = SPIKE_COUNT_THRESHOLD if threshold is None else threshold
        if thr <= 0:
            raise InvalidWindowError("threshold must be positive")
        if payload.n_events == 0:
            return None
        bins = payload.t_us // SPIKE_BIN_US
        counts = np.bincount(bins.astype(np.int64))
        hot = np.nonzero(counts >= thr)[0]
        if len(hot) == 0:
            return None
        first_bin = hot[0]
        in_bin = payload.t_us[bins == first_bin]
        return int(in_bin[0])

    x = payload.samples
    if len(x) == 0:
        return None
    n_base = max(1, int(round(ANALOG_BASELINE_US * payload.rate_hz / 1e6)))
    base = x[:n_base]
    baseline = float(base.mean())
    if threshold is None:
        sigma = float(base.std())
        threshold = ANALOG_THRESHOLD_SIGMA * sigma
    if threshold <= 0:
        return None
    dev = np.abs(x - baseline)
    hits = np.nonzero(dev > threshold)[0]
    if len(hits) == 0:
        return None
    return int(round(hits[0] * 1e6 / payload.rate_hz))


def select_taxels(train: SpikeTrain, keep: Iterable[int]) -> SpikeTrain:
    """Keep only the given taxels, re-mapped densely in ascending order.

    A selection matching one full finger keeps that finger's lattice
    layout; any other subset collapses to a 1 x k layout.
    """
    keep_sorted = sorted(set(int(k) for k in keep))
    if not keep_sorted:
        raise InvalidSelectionError("taxel selection must be non-empty")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= train.taxel_count:
        raise InvalidSelectionError(
            f"taxel indices must lie in [0, {train.taxel_count})"
        )
    if len(keep_sorted) == train.taxel_count:
        return train

    layouts = _selected_layouts(train.layouts, keep_sorted)
    keep_arr = np.asarray(keep_sorted, dtype=np.int64)
    mask = np.isin(train.taxel, keep_arr)
    new_taxel = np.searchsorted(keep_arr, train.taxel[mask])
    return SpikeTrain(
        train.t_us[mask],
        new_taxel,
        train.polarity[mask],
        duration_us=train.duration_us,
        layouts=layouts,
        nominal_rate_hz=train.nominal_rate_hz,
    )


def _selected_layouts(
    layouts: tuple[TaxelLayout, ...], keep_sorted: list[int]
) -> tuple[TaxelLayout, ...]:
    offset = 0
    for lay in layouts:
        span = list(range(offset, offset + lay.taxel_count))
        if keep_sorted == span:
            return (lay,)
        offset += lay.taxel_count
    return (TaxelLayout(rows=1, cols=len(keep_sorted), finger_id="sel"),)
