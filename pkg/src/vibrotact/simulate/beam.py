"""Bending-beam modal vibration model.

A slender rod excited by an impulsive transverse tap is modelled by
modal superposition: w(x, t) = sum_n phi_n(x) q_n(t), where each modal
coordinate q_n is the impulse response of a damped oscillator

    q_n(t) = (J * phi_n(a) / (m_n * w_dn)) * exp(-z_n w_n (t - t0))
             * sin(w_dn (t - t0)),          t >= t0,

with tap impulse J at position a, modal mass m_n, natural frequency
w_n = (beta_n L)^2 sqrt(EI / (rho A L^4)), damping ratio z_n and damped
frequency w_dn = w_n sqrt(1 - z_n^2).

For the default clamped-free (cantilever) boundary the beta_n L solve
cosh(bL) cos(bL) + 1 = 0 and the shapes are

    phi_n(x) = cosh(b x) - cos(b x) - s_n (sinh(b x) - sin(b x)),
    s_n = (cosh(bL) + cos(bL)) / (sinh(bL) + sin(bL)).

A pinned-pinned variant (phi_n = sin(n pi x / L)) is also provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import AliasingError, InvalidDataError

CLAMPED_FREE = "clamped-free"
PINNED_PINNED = "pinned-pinned"

# Acrylic rod material constants.
ACRYLIC_E_PA = 3.2e9
ACRYLIC_RHO_KG_M3 = 1180.0


@dataclass(frozen=True)
class BeamSpec:
    """Geometry, material and modal truncation of the rod."""

    length_m: float
    youngs_modulus_pa: float = ACRYLIC_E_PA
    density_kg_m3: float = ACRYLIC_RHO_KG_M3
    width_m: float = 0.015
    thickness_m: float = 0.0015
    modal_damping: float = 0.02
    mode_count: int = 8
    boundary: str = CLAMPED_FREE

    def __post_init__(self):
        for name in ("length_m", "youngs_modulus_pa", "density_kg_m3", "width_m", "thickness_m"):
            if getattr(self, name) <= 0:
                raise InvalidDataError(f"{name} must be positive")
        if not 0 <= self.modal_damping < 1:
            raise InvalidDataError("modal_damping must lie in [0, 1)")
        if self.mode_count < 1:
            raise InvalidDataError("mode_count must be >= 1")
        if self.boundary not in (CLAMPED_FREE, PINNED_PINNED):
            raise InvalidDataError(f"unknown boundary {self.boundary!r}")

    @property
    def area_m2(self) -> float:
        return self.width_m * self.thickness_m

    @property
    def second_moment_m4(self) -> float:
        return self.width_m * self.thickness_m**3 / 12.0


def cantilever_roots(n: int, tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """First ``n`` roots of cosh(x) cos(x) + 1 = 0 (bisection, ascending)."""
    roots = []
    for k in range(1, n + 1):
        # Roots interleave the odd multiples of pi/2; bracket around them.
        guess = (2 * k - 1) * math.pi / 2
        lo, hi = guess - math.pi / 2 + 1e-9, guess + math.pi / 2 - 1e-9
        flo = math.cosh(lo) * math.cos(lo) + 1.0
        fhi = math.cosh(hi) * math.cos(hi) + 1.0
        if flo * fhi > 0:
            raise InvalidDataError(f"characteristic root {k}: bracket does not change sign")
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            fmid = math.cosh(mid) * math.cos(mid) + 1.0
            if flo * fmid <= 0:
                hi = mid
            else:
                lo, flo = mid, fmid
            if hi - lo < tol:
                break
        else:
            raise InvalidDataError(f"characteristic root {k}: bisection did not converge")
        roots.append(0.5 * (lo + hi))
    return np.array(roots)


@dataclass(frozen=True)
class ModalBasis:
    """Natural frequencies, shape functions and modal masses of a beam."""

    spec: BeamSpec
    frequencies_hz: np.ndarray
    modal_masses: np.ndarray
    shapes: tuple[Callable[[np.ndarray], np.ndarray], ...]
    curvatures: tuple[Callable[[np.ndarray], np.ndarray], ...] = field(repr=False, default=())

    @property
    def omega_rad_s(self) -> np.ndarray:
        return 2 * np.pi * self.frequencies_hz

    def shape_matrix(self, x: np.ndarray, curvature: bool = False) -> np.ndarray:
        """(mode, position) matrix of phi_n(x) or phi_n''(x)."""
        fns = self.curvatures if curvature else self.shapes
        return np.stack([fn(np.asarray(x, dtype=np.float64)) for fn in fns])


def _cantilever_shape(beta: float, sigma: float) -> Callable[[np.ndarray], np.ndarray]:
    def phi(x):
        bx = beta * x
        return np.cosh(bx) - np.cos(bx) - sigma * (np.sinh(bx) - np.sin(bx))

    return phi


def _cantilever_curvature(beta: float, sigma: float) -> Callable[[np.ndarray], np.ndarray]:
    def phi_xx(x):
        bx = beta * x
        return beta**2 * (np.cosh(bx) + np.cos(bx) - sigma * (np.sinh(bx) + np.sin(bx)))

    return phi_xx


def modal_basis(spec: BeamSpec) -> ModalBasis:
    """Mode shapes, natural frequencies (Hz) and modal masses of the rod."""
    L = spec.length_m
    stiffness = math.sqrt(
        spec.youngs_modulus_pa
        * spec.second_moment_m4
        / (spec.density_kg_m3 * spec.area_m2 * L**4)
    )
    if spec.boundary == CLAMPED_FREE:
        bl = cantilever_roots(spec.mode_count)
        betas = bl / L
        sigmas = (np.cosh(bl) + np.cos(bl)) / (np.sinh(bl) + np.sin(bl))
        shapes = tuple(_cantilever_shape(b, s) for b, s in zip(betas, sigmas))
        curvatures = tuple(_cantilever_curvature(b, s) for b, s in zip(betas, sigmas))
    else:
        ns = np.arange(1, spec.mode_count + 1)
        bl = ns * math.pi
        betas = bl / L
        shapes = tuple(
            (lambda b: (lambda x: np.sin(b * x)))(b) for b in betas
        )
        curvatures = tuple(
            (lambda b: (lambda x: -(b**2) * np.sin(b * x)))(b) for b in betas
        )
    omegas = bl**2 * stiffness
    freqs = omegas / (2 * math.pi)
    if np.any(np.diff(freqs) <= 0):
        raise InvalidDataError("modal frequencies must be strictly increasing")
    # m_n = rho A int_0^L phi_n(x)^2 dx, by composite Simpson quadrature.
    grid = np.linspace(0.0, L, 2001)
    masses = np.empty(spec.mode_count)
    for n, phi in enumerate(shapes):
        masses[n] = spec.density_kg_m3 * spec.area_m2 * _simpson(phi(grid) ** 2, grid)
    return ModalBasis(spec, freqs, masses, shapes, curvatures)


def _simpson(y: np.ndarray, x: np.ndarray) -> float:
    h = x[1] - x[0]
    return float(h / 3.0 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum()))


@dataclass(frozen=True)
class TapStimulus:
    """Impulsive transverse tap; position measured from the free end."""

    position_m: float
    impulse_ns: float = 0.02
    onset_s: float = 0.0

    def validate(self, spec: BeamSpec) -> None:
        if not 0 <= self.position_m <= spec.length_m:
            raise InvalidDataError("tap position must lie on the rod")
        if self.impulse_ns < 0:
            raise InvalidDataError("impulse must be non-negative")
        if self.onset_s < 0:
            raise InvalidDataError("tap onset must be non-negative")


def modal_amplitudes(basis: ModalBasis, tap: TapStimulus) -> np.ndarray:
    """Per-mode amplitude J * phi_n(a) / (m_n * w_dn) for the tap."""
    spec = basis.spec
    tap.validate(spec)
    x_tap = spec.length_m - tap.position_m  # position is from the free end
    phi_at_tap = np.array([phi(np.array([x_tap]))[0] for phi in basis.shapes])
    zeta = spec.modal_damping
    w_d = basis.omega_rad_s * math.sqrt(1 - zeta**2)
    return tap.impulse_ns * phi_at_tap / (basis.modal_masses * w_d)


def modal_response(
    basis: ModalBasis,
    tap: TapStimulus,
    t_s: np.ndarray,
) -> np.ndarray:
    """(mode, time) matrix of modal coordinates q_n(t)."""
    amps = modal_amplitudes(basis, tap)
    zeta = basis.spec.modal_damping
    w = basis.omega_rad_s
    w_d = w * math.sqrt(1 - zeta**2)
    dt = np.asarray(t_s, dtype=np.float64) - tap.onset_s
    active = dt >= 0
    q = np.zeros((basis.spec.mode_count, len(dt)))
    if np.any(active):
        da = dt[active]
        q[:, active] = (
            amps[:, None]
            * np.exp(-zeta * w[:, None] * da[None, :])
            * np.sin(w_d[:, None] * da[None, :])
        )
    return q


def check_nyquist(basis: ModalBasis, rate_hz: float) -> None:
    f_max = float(basis.frequencies_hz[-1])
    if rate_hz <= 2 * f_max:
        raise AliasingError(
            f"synthesis rate {rate_hz} Hz must exceed twice the highest "
            f"retained modal frequency ({f_max:.1f} Hz)"
        )
