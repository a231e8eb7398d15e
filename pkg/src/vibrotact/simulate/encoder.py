"""Send-on-delta spike encoding of analog taxel signals.

Each taxel tracks an internal level.  Whenever the signal rises at least
``delta_threshold`` above the level a +1 event fires and the level steps
up by one threshold; a symmetric fall fires -1.  At most one event per
sample per taxel, and events are suppressed while the per-taxel rate
limit would be violated.  The level implied by the cumulative event sum
therefore tracks the signal to within one threshold whenever the rate
limit is not binding and per-sample changes stay below the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidDataError
from ..core.types import (
    AnalogSignal,
    SpikeTrain,
    TaxelLayout,
    default_layouts,
    min_gap_us,
)

try:  # optional jit; the pure-python path is semantically identical
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@dataclass(frozen=True)
class SpikeEncoderSpec:
    """Send-on-delta parameters."""

    delta_threshold: float
    rate_limit_hz: float = 4000.0

    def __post_init__(self):
        if self.delta_threshold <= 0:
            raise InvalidDataError("delta_threshold must be positive")
        if self.rate_limit_hz <= 0:
            raise InvalidDataError("rate_limit_hz must be positive")


@_njit(cache=False)
def _encode_channel(samples, t_us, delta, gap_us, out_t, out_pol):
    """Core send-on-delta loop for one taxel; returns the event count."""
    level = samples[0] if len(samples) else 0.0
    last_t = -gap_us - 1
    n_out = 0
    for i in range(len(samples)):
        if t_us[i] - last_t < gap_us:
            continue
        diff = samples[i] - level
        if diff >= delta:
            out_t[n_out] = t_us[i]
            out_pol[n_out] = 1
            level += delta
            last_t = t_us[i]
            n_out += 1
        elif diff <= -delta:
            out_t[n_out] = t_us[i]
            out_pol[n_out] = -1
            level -= delta
            last_t = t_us[i]
            n_out += 1
    return n_out


def encode_spikes(
    signals: Sequence[AnalogSignal],
    enc: SpikeEncoderSpec,
    layouts: Optional[tuple[TaxelLayout, ...]] = None,
) -> SpikeTrain:
    """Encode one analog signal per taxel into a single spike train."""
    if not signals:
        raise InvalidDataError("need at least one taxel signal")
    rate = signals[0].rate_hz
    n = signals[0].n_samples
    for sig in signals:
        if sig.rate_hz != rate or sig.n_samples != n:
            raise InvalidDataError("taxel signals must share rate and length")
    if layouts is None:
        layouts = default_layouts(len(signals))
    gap_us = min_gap_us(enc.rate_limit_hz)
    t_us = np.round(np.arange(n) * 1e6 / rate).astype(np.int64)
    all_t, all_taxel, all_pol = [], [], []
    out_t = np.empty(n, dtype=np.int64)
    out_pol = np.empty(n, dtype=np.int8)
    for k, sig in enumerate(signals):
        n_out = _encode_channel(
            sig.samples, t_us, float(enc.delta_threshold), gap_us, out_t, out_pol
        )
        if n_out:
            all_t.append(out_t[:n_out].copy())
            all_taxel.append(np.full(n_out, k, dtype=np.int64))
            all_pol.append(out_pol[:n_out].copy())
    duration_us = int(round(n * 1e6 / rate))
    if not all_t:
        empty = np.empty(0, dtype=np.int64)
        return SpikeTrain(
            empty, empty.copy(), np.empty(0, dtype=np.int8),
            duration_us, layouts, enc.rate_limit_hz,
        )
    t_cat = np.concatenate(all_t)
    taxel_cat = np.concatenate(all_taxel)
    pol_cat = np.concatenate(all_pol)
    order = np.lexsort((taxel_cat, t_cat))
    return SpikeTrain(
        t_cat[order], taxel_cat[order], pol_cat[order],
        duration_us, layouts, enc.rate_limit_hz,
    )
