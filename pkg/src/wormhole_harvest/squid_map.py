"""External flux bias that makes a dc-SQUID array emulate the wormhole line.

A SQUID-array transmission line propagates signals at a speed set by the
external magnetic flux threading each loop.  Reproducing the wormhole's
position-dependent speed requires the bias profile

    phi_ext(x) = (phi0 / pi) arccos(1 - b0^2 / (|x| + b0)^2),

peaking at half a flux quantum right above the throat and decaying to zero
far away.  This module evaluates that profile, samples it per SQUID cell,
and collects the order-of-magnitude numbers that decide whether a given
throat size is experimentally reachable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import FLUX_QUANTUM, HBAR, K_BOLTZMANN
from .geometry import WormholeGeometry

# Thresholds for the feasibility verdict; overridable per call.
DEFAULT_EPSILON_B_TARGET = 5.0   # throat-to-distance ratio where effects turn on
DEFAULT_B0_MAX = 1e-3            # largest throat radius deemed realisable [m]


@dataclass(frozen=True)
class ArraySpec:
    """Geometry of the SQUID chain: cell pitch, cell count, flux quantum."""

    cell_pitch: float
    n_cells: int
    flux_quantum: float = FLUX_QUANTUM

    def __post_init__(self) -> None:
        if self.cell_pitch <= 0.0:
            raise ValueError("cell pitch must be positive")
        if self.n_cells <= 0:
            raise ValueError("cell count must be positive")
        if self.flux_quantum <= 0.0:
            raise ValueError("flux quantum must be positive")

    @property
    def span(self) -> float:
        """Total array length; cells cover x in [-span/2, span/2]."""
        return self.n_cells * self.cell_pitch

    def midpoint(self, cell: int) -> float:
        return (cell - (self.n_cells - 1) / 2.0) * self.cell_pitch


@dataclass(frozen=True)
class FeasibilityReport:
    wavelength: float          # qubit transition wavelength 2 pi c / Omega [m]
    epsilon_b: float           # 2 b0 / rho_x, dimensionless wormhole strength
    thermal_occupation: float  # mean photon number at the qubit frequency
    speed_required: float      # c needed for rho_x to equal one wavelength [m/s]
    b0: float
    flat: bool                 # b0 == 0, nothing to bias
    feasible: bool             # epsilon_b >= target with b0 below the cap


def flux_profile(geom: WormholeGeometry, x: float) -> float:
    """External flux at lab position x, in webers.

    Even in x, bounded by [0, phi0/2]; the maximum phi0/2 sits at the throat
    and the bias vanishes as |x| grows.  Flat spacetime needs no bias at all.
    """
    if geom.b0 == 0.0:
        return 0.0
    ratio = geom.b0 / (abs(x) + geom.b0)
    return FLUX_QUANTUM / math.pi * math.acos(1.0 - ratio * ratio)


def discretize_profile(geom: WormholeGeometry, array: ArraySpec) -> list[tuple[int, float]]:
    """Sample the flux profile at every cell midpoint.

    Midpoint sampling (not cell averaging) converges at O(pitch^2) against
    the continuum profile.  The table is symmetric about the array centre
    and decreases monotonically with |x|.
    """
    return [(i, flux_profile(geom, array.midpoint(i))) for i in range(array.n_cells)]


def write_flux_table(path: str, geom: WormholeGeometry, array: ArraySpec) -> None:
    """Emit the per-cell bias table as text: `# cell flux_phi0` header,
    then one `%d %.12e` row per cell with flux in units of phi0."""
    rows = discretize_profile(geom, array)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# cell flux_phi0\n")
        for i, flux in rows:
            fh.write("%d %.12e\n" % (i, flux / array.flux_quantum))


def thermal_occupation(freq: float, temperature: float) -> float:
    """Bose-Einstein occupation 1/(exp(hbar Omega / kB T) - 1).

    freq is the angular frequency of the qubit transition [rad/s].
    """
    if freq <= 0.0:
        raise ValueError("frequency must be positive")
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    x = HBAR * freq / (K_BOLTZMANN * temperature)
    if x < 1.0:
        return 1.0 / math.expm1(x)
    # same quantity, immune to exp overflow deep in the quantum regime
    return math.exp(-x) / -math.expm1(-x)


def feasibility(
    geom: WormholeGeometry,
    omega: float,
    rho_x: float,
    temperature: float,
    epsilon_b_target: float = DEFAULT_EPSILON_B_TARGET,
    b0_max: float = DEFAULT_B0_MAX,
) -> FeasibilityReport:
    """Collect the experimental numbers for one (geometry, qubit pair) setup.

    Reports the qubit wavelength, the wormhole strength epsilon_b = 2 b0 /
    rho_x, the thermal photon number at `temperature`, and the propagation
    speed that would place the qubits one wavelength apart.  The setup is
    flagged feasible when epsilon_b reaches the target with the throat
    still below the fabrication cap.
    """
    if omega <= 0.0 or rho_x <= 0.0:
        raise ValueError("qubit frequency and separation must be positive")
    wavelength = 2.0 * math.pi * geom.c_flat / omega
    epsilon_b = 2.0 * geom.b0 / rho_x
    return FeasibilityReport(
        wavelength=wavelength,
        epsilon_b=epsilon_b,
        thermal_occupation=thermal_occupation(omega, temperature),
        speed_required=omega * rho_x / (2.0 * math.pi),
        b0=geom.b0,
        flat=geom.b0 == 0.0,
        feasible=epsilon_b >= epsilon_b_target and 0.0 < geom.b0 <= b0_max,
    )
