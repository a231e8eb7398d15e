"""Grasp pickup: couples beam motion into per-taxel pressure channels.

The gripper clamps the rod at x = 0; the finger pad covers a short patch
of the rod just above the clamp.  Each taxel senses the local beam
response at a set of contact points through a coupling-gain matrix::

    p_k(t) = sum_j G[k, j] * y(x_j, t) + noise,

where y is either the local curvature (strain; the default, since an
ideal clamp admits no displacement at its root) or the local deflection.
Gains fall off smoothly with lattice distance and carry a small seeded
per-taxel perturbation so that taxels are non-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidDataError
from ..core.types import AnalogSignal, TaxelLayout, nuskin_layout, two_finger_layouts
from .beam import BeamSpec, ModalBasis, TapStimulus, check_nyquist, modal_response

STRAIN = "strain"
DISPLACEMENT = "displacement"


@dataclass(frozen=True)
class GraspPickup:
    """Mapping from beam motion at contact points to taxel pressures."""

    grasp_position_m: float
    contact_points_m: np.ndarray           # (n_points,) positions along the rod
    taxel_gains: np.ndarray                # (n_taxels, n_points) coupling weights
    layouts: tuple[TaxelLayout, ...]
    noise_std: float = 0.0
    quantity: str = STRAIN

    def __post_init__(self):
        object.__setattr__(
            self, "contact_points_m", np.ascontiguousarray(self.contact_points_m, np.float64)
        )
        object.__setattr__(
            self, "taxel_gains", np.ascontiguousarray(self.taxel_gains, np.float64)
        )
        if not np.all(np.isfinite(self.taxel_gains)):
            raise InvalidDataError("taxel gains must be finite")
        if not np.any(self.taxel_gains != 0):
            raise InvalidDataError("at least one taxel gain must be nonzero")
        n_taxels = sum(l.taxel_count for l in self.layouts)
        if self.taxel_gains.shape != (n_taxels, len(self.contact_points_m)):
            raise InvalidDataError("taxel_gains shape must be (taxels, contact points)")
        if self.noise_std < 0:
            raise InvalidDataError("noise_std must be non-negative")
        if self.quantity not in (STRAIN, DISPLACEMENT):
            raise InvalidDataError(f"unknown pickup quantity {self.quantity!r}")

    @property
    def taxel_count(self) -> int:
        return sum(l.taxel_count for l in self.layouts)


def _finger_gains(
    layout: TaxelLayout, n_points: int, rng: np.random.Generator, jitter: float
) -> np.ndarray:
    """Row-position Gaussian falloff onto contact points, jittered per taxel."""
    cols = np.arange(n_points)
    gains = np.empty((layout.taxel_count, n_points))
    for k in range(layout.taxel_count):
        row = k // layout.cols  # row index runs along the rod axis
        centre = row * (n_points - 1) / max(layout.rows - 1, 1)
        profile = np.exp(-0.5 * ((cols - centre) / 1.0) ** 2)
        gains[k] = profile * (1.0 + rng.uniform(-jitter, jitter))
    return gains


def default_pickup(
    spec: BeamSpec,
    fingers: int = 2,
    grasp_position_m: float = 0.03,
    contact_span_m: float = 0.03,
    n_points: int = 8,
    noise_std: float = 0.0,
    gain_jitter: float = 0.2,
    seed: int = 0,
    quantity: str = STRAIN,
) -> GraspPickup:
    """40- or 80-taxel pickup centred on the grasp point near the clamp."""
    if fingers not in (1, 2):
        raise InvalidDataError("fingers must be 1 or 2")
    lo = grasp_position_m - contact_span_m / 2
    hi = grasp_position_m + contact_span_m / 2
    if lo <= 0 or hi >= spec.length_m:
        raise InvalidDataError("contact patch must lie strictly inside the rod")
    points = np.linspace(lo, hi, n_points)
    layouts = two_finger_layouts() if fingers == 2 else (nuskin_layout(),)
    rng = np.random.default_rng(seed)
    gains = np.vstack([_finger_gains(lay, n_points, rng, gain_jitter) for lay in layouts])
    if fingers == 2:
        # Opposite finger couples slightly differently through the grip.
        n40 = layouts[0].taxel_count
        gains[n40:] *= 0.9
    return GraspPickup(grasp_position_m, points, gains, layouts, noise_std, quantity)


def synthesize_response(
    spec: BeamSpec,
    tap: TapStimulus,
    pickup: GraspPickup,
    rate_hz: float,
    duration_s: float,
    basis: Optional[ModalBasis] = None,
    rng: Optional[np.random.Generator] = None,
) -> list[AnalogSignal]:
    """Per-taxel pressure signals for one tap.

    Refuses synthesis rates at or below twice the highest retained modal
    frequency rather than silently aliasing.
    """
    from .beam import modal_basis as _modal_basis

    if basis is None:
        basis = _modal_basis(spec)
    check_nyquist(basis, rate_hz)
    n = int(round(duration_s * rate_hz))
    t = np.arange(n) / rate_hz
    q = modal_response(basis, tap, t)                          # (modes, time)
    shape_m = basis.shape_matrix(
        pickup.contact_points_m, curvature=pickup.quantity == STRAIN
    )                                                          # (modes, points)
    local = shape_m.T @ q                                      # (points, time)
    pressures = pickup.taxel_gains @ local                     # (taxels, time)
    if pickup.noise_std > 0:
        if rng is None:
            rng = np.random.default_rng(0)
        pressures = pressures + rng.normal(0.0, pickup.noise_std, pressures.shape)
    return [
        AnalogSignal(pressures[k], rate_hz, channel_name=f"taxel{k:02d}")
        for k in range(pressures.shape[0])
    ]
