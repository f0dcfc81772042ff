"""Discretised 1-D field and qubit-field interaction, shared by both engines.

The field lives on a ring of circumference L in the free-falling coordinate,
with momenta k_n = 2 pi n / L for n in {+-1, ..., +-n_modes/2} (no zero
mode), linear dispersion omega_k = c |k|, and a per-mode density weight
f_k = sqrt(omega_k / omega_1) where omega_1 = 2 pi c / L is the mode
spacing in frequency.

Each qubit couples through sigma^x to the field combination

    sum_k u_k (e^{i k chi} a_k + e^{-i k chi} a_k^dagger),
    u_k = g f_k omega_1 / Omega = g sqrt(omega_k omega_1) / Omega,

i.e. a sqrt(omega) spectral amplitude.  The omega_1/Omega calibration makes
observables finite in the continuum limit at fixed frequency cutoff and
ties the one-qubit emission probability to the dimensionless coupling
K = (g/Omega)^2 alone.  Both the perturbative engine and the exact-evolution
oracle consume identical (mode set, interaction) pairs, so every comparison
between them is at matched discretisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Box-size floor: no wavefront may wrap the ring during the interaction.
MIN_BOX_FACTOR = 8.0
# Default frequency cutoff in units of the qubit frequency.
DEFAULT_CUTOFF_FACTOR = 40.0
DEFAULT_N_MODES = 256


@dataclass(frozen=True)
class FieldModeSet:
    """Immutable symmetric mode set; arrays are read-only and index-aligned."""

    box_length: float
    c_flat: float
    k: np.ndarray        # signed momenta, ascending
    omega: np.ndarray    # c |k|
    weight: np.ndarray   # f_k = sqrt(omega_k / omega_1)

    @property
    def n_modes(self) -> int:
        return self.k.size

    @property
    def omega_spacing(self) -> float:
        """Frequency spacing omega_1 = 2 pi c / L (also the lowest mode)."""
        return 2.0 * math.pi * self.c_flat / self.box_length

    @property
    def omega_max(self) -> float:
        return float(self.omega.max())


@dataclass(frozen=True)
class InteractionSpec:
    """Two qubits at fixed free-falling positions, suddenly coupled for t."""

    chi_A: float
    chi_B: float
    omega: float   # shared transition frequency [rad/s]
    g: float       # coupling rate Omega sqrt(K) [rad/s]
    t: float

    def __post_init__(self) -> None:
        if self.chi_B <= self.chi_A:
            raise ValueError("chi_B must exceed chi_A")
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")
        if self.g < 0.0:   # g = 0 switches the coupling off entirely
            raise ValueError("g must be non-negative")
        if self.t < 0.0:
            raise ValueError("t must be non-negative")

    @property
    def separation(self) -> float:
        return self.chi_B - self.chi_A


def build_mode_set(box_length: float, n_modes: int, c_flat: float) -> FieldModeSet:
    """Construct the +-k mode ladder for a ring of the given length."""
    if box_length <= 0.0 or c_flat <= 0.0:
        raise ValueError("box length and speed must be positive")
    if n_modes < 2 or n_modes % 2 != 0:
        raise ValueError("n_modes must be even and >= 2")
    half = n_modes // 2
    n = np.concatenate([np.arange(-half, 0), np.arange(1, half + 1)])
    k = 2.0 * math.pi * n / box_length
    omega = c_flat * np.abs(k)
    weight = np.sqrt(omega / (2.0 * math.pi * c_flat / box_length))
    for arr in (k, omega, weight):
        arr.setflags(write=False)
    return FieldModeSet(box_length=box_length, c_flat=c_flat, k=k, omega=omega, weight=weight)


def sized_mode_set(
    c_flat: float,
    omega_q: float,
    t: float,
    rho: float,
    box_factor: float = MIN_BOX_FACTOR,
    cutoff_factor: float = DEFAULT_CUTOFF_FACTOR,
) -> FieldModeSet:
    """Mode set sized for one interaction: box covers the light cone, the
    frequency ladder reaches cutoff_factor times the qubit frequency.

    The box never shrinks below one qubit wavelength so the resonance is
    always resolved.  box_factor below 8 would let wavefronts wrap within
    the interaction window and is rejected.
    """
    if box_factor < MIN_BOX_FACTOR:
        raise ValueError(f"box_factor must be >= {MIN_BOX_FACTOR}")
    wavelength = 2.0 * math.pi * c_flat / omega_q
    box = box_factor * max(c_flat * t, rho, wavelength)
    half = math.ceil(cutoff_factor * omega_q * box / (2.0 * math.pi * c_flat))
    return build_mode_set(box, 2 * half, c_flat)


def doubled(modes: FieldModeSet) -> FieldModeSet:
    """Twice the box, twice the modes: same frequency cutoff, halved spacing.

    Convergence contract: observables at (modes, doubled(modes)) must agree
    before a result is trusted.
    """
    return build_mode_set(2.0 * modes.box_length, 2 * modes.n_modes, modes.c_flat)


def coupling_strengths(spec: InteractionSpec, modes: FieldModeSet) -> np.ndarray:
    """Per-mode coupling u_k = g sqrt(omega_k omega_1) / Omega (real, > 0)."""
    return spec.g * modes.weight * (modes.omega_spacing / spec.omega)


def coupling_matrix_element(
    spec: InteractionSpec, modes: FieldModeSet, mode_index: int, qubit: str
) -> complex:
    """Coefficient of a_k in the interaction for one qubit: u_k e^{i k chi}.

    The Hermitian-conjugate coefficient multiplies a_k^dagger implicitly.
    """
    if not 0 <= mode_index < modes.n_modes:
        raise IndexError(f"mode index {mode_index} out of range")
    if qubit not in ("A", "B"):
        raise ValueError("qubit must be 'A' or 'B'")
    chi = spec.chi_A if qubit == "A" else spec.chi_B
    u = coupling_strengths(spec, modes)[mode_index]
    return u * np.exp(1j * modes.k[mode_index] * chi)
