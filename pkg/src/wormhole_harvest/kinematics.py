"""Dimensionless bookkeeping between lab and free-falling coordinates.

A symmetric qubit pair sits at lab positions +-x_B.  In the free-falling
coordinates (where the field propagates at the constant speed c) the pair
separation stretches to rho_l = rho_x sqrt(1 + 2 xi_b) with xi_b = b0/x_B.
Three light-cone parameters describe one interaction of duration t:

    xi_x = t / t_AB        lab frame, t_AB = light travel time between qubits
    xi_l = c t / rho_l     free-falling frame
    xi_F = c t / rho_x     flat-spacetime reference

For the b(r) = b0^2/r geometry the throat corrections entering t_AB cancel
analytically (2 arcsinh(1/sqrt(2 xi_b)) equals the logarithm term), so
t_AB = rho_l / c and xi_x = xi_l hold identically; the full three-term
closed form is evaluated anyway and cross-checked against quadrature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.integrate import quad

from .geometry import WormholeGeometry, proper_radial

# K * Omega * t above this value leaves the perturbative validity domain.
DEFAULT_VALIDITY_BOUND = 0.5

# Below this xi_b the throat corrections are evaluated by their (identically
# zero) series to avoid forming arcsinh/log of huge arguments.
_XI_B_SERIES_THRESHOLD = 1e-8

_ROUTE_CONSISTENCY_RTOL = 1e-10


@dataclass(frozen=True)
class QubitPairConfig:
    """Symmetric pair: positions +-x_B, shared frequency, coupling, duration.

    Only x_B is stored; the partner position is -x_B by construction.
    K = (g/Omega)^2 is the dimensionless coupling of both qubits.
    """

    x_B: float
    omega: float
    coupling: float
    t: float

    def __post_init__(self) -> None:
        if self.x_B <= 0.0:
            raise ValueError("qubit position x_B must be positive")
        if self.omega <= 0.0:
            raise ValueError("qubit frequency must be positive")
        if self.coupling <= 0.0:
            raise ValueError("coupling K must be positive")
        if self.t < 0.0:
            raise ValueError("interaction time must be non-negative")
        if not self.perturbatively_valid():
            warnings.warn(
                f"K*Omega*t = {self.k_omega_t:.3g} exceeds the perturbative "
                f"validity bound {DEFAULT_VALIDITY_BOUND}",
                stacklevel=2,
            )

    @property
    def k_omega_t(self) -> float:
        return self.coupling * self.omega * self.t

    def perturbatively_valid(self, bound: float = DEFAULT_VALIDITY_BOUND) -> bool:
        return self.k_omega_t <= bound

    @property
    def g(self) -> float:
        """Coupling rate g = Omega sqrt(K)."""
        return self.omega * math.sqrt(self.coupling)

    @property
    def rho_x(self) -> float:
        """Lab-frame separation 2 x_B."""
        return 2.0 * self.x_B


@dataclass(frozen=True)
class LightconeParams:
    """All dimensionless parameters of one (geometry, pair, duration) triple.

    xi_b doubles as the wormhole-strength axis: with symmetric placement
    epsilon_b = 2 b0 / rho_x = b0 / x_B = xi_b, one quantity under two
    conventional names.
    """

    xi_b: float
    xi_x: float
    xi_l: float
    xi_F: float
    rho_l: float
    rho_x: float
    t_AB: float

    @property
    def epsilon_b(self) -> float:
        """Alias of xi_b (identical under symmetric placement)."""
        return self.xi_b


def rho_l_from_lab(geom: WormholeGeometry, x_B: float) -> float:
    """Free-falling separation 2 x_B sqrt(1 + 2 b0/x_B) of the pair at +-x_B."""
    if x_B <= 0.0:
        raise ValueError("x_B must be positive")
    return 2.0 * proper_radial(geom, x_B)


def _throat_correction(b0: float, xi_b: float) -> float:
    """-2 b0 arcsinh(1/sqrt(2 xi_b)) + b0 log(1 + (1 + sqrt(1+2 xi_b))/xi_b).

    Zero to all orders (the two terms are the same function); evaluating the
    pair keeps light_travel_time in the literal closed form while the series
    branch below the threshold avoids the spurious rounding of
    arcsinh/log at extreme arguments.
    """
    if xi_b < _XI_B_SERIES_THRESHOLD:
        return 0.0
    return b0 * (
        math.log(1.0 + (1.0 + math.sqrt(1.0 + 2.0 * xi_b)) / xi_b)
        - 2.0 * math.asinh(1.0 / math.sqrt(2.0 * xi_b))
    )


def light_travel_time(geom: WormholeGeometry, x_B: float) -> float:
    """Lab-frame light travel time t_AB between the qubits at +-x_B.

    Closed form of the integral of 1/c(x) across the throat; reduces to
    2 x_B / c exactly in flat spacetime.
    """
    if x_B <= 0.0:
        raise ValueError("x_B must be positive")
    if geom.b0 == 0.0:
        return 2.0 * x_B / geom.c_flat
    xi_b = geom.b0 / x_B
    rho_l = rho_l_from_lab(geom, x_B)
    return (rho_l + _throat_correction(geom.b0, xi_b)) / geom.c_flat


def light_travel_time_quadrature(geom: WormholeGeometry, x_B: float) -> float:
    """t_AB by adaptive quadrature of dx / c(x); oracle for the closed form.

    The integrand diverges as 1/sqrt(|x|) at the throat; substituting
    u = sqrt(x) on each half renders it smooth.
    """
    if x_B <= 0.0:
        raise ValueError("x_B must be positive")
    if geom.b0 == 0.0:
        return 2.0 * x_B / geom.c_flat
    b0 = geom.b0

    def integrand(u: float) -> float:
        return 2.0 * (u * u + b0) / math.sqrt(u * u + 2.0 * b0)

    half, _ = quad(integrand, 0.0, math.sqrt(x_B), epsabs=0.0, epsrel=1e-12, limit=200)
    return 2.0 * half / geom.c_flat


def xi_l_from_xi_x(xi_x: float, xi_b: float, xi_F: float) -> float:
    """Free-falling light-cone parameter from the lab one.

    Inverts 1/xi_l = 1/xi_x + (xi_b/xi_F) arcsinh(1/sqrt(2 xi_b))
                     - (xi_b/(2 xi_F)) log(1 + (1 + sqrt(1+2 xi_b))/xi_b).
    The two throat terms cancel analytically, so the map returns xi_x up to
    rounding; in flat spacetime (xi_b = 0) it returns xi_x exactly.
    """
    if xi_x <= 0.0 or xi_F <= 0.0:
        raise ValueError("xi_x and xi_F must be positive")
    if xi_b < 0.0:
        raise ValueError("xi_b must be non-negative")
    if xi_b < _XI_B_SERIES_THRESHOLD:
        return xi_x
    inv = (
        1.0 / xi_x
        + (xi_b / xi_F) * math.asinh(1.0 / math.sqrt(2.0 * xi_b))
        - (xi_b / (2.0 * xi_F)) * math.log(1.0 + (1.0 + math.sqrt(1.0 + 2.0 * xi_b)) / xi_b)
    )
    return 1.0 / inv


def params_from_physical(geom: WormholeGeometry, cfg: QubitPairConfig) -> LightconeParams:
    """Fill every light-cone parameter from one physical configuration.

    In flat spacetime all three xi are assigned from the same float, so
    xi_l == xi_x == xi_F bitwise.  Otherwise xi_l obtained through the
    lab-to-free-falling map is verified against c t / rho_l directly.
    """
    c = geom.c_flat
    rho_x = cfg.rho_x
    if geom.b0 == 0.0:
        xi = c * cfg.t / rho_x
        return LightconeParams(
            xi_b=0.0, xi_x=xi, xi_l=xi, xi_F=xi,
            rho_l=rho_x, rho_x=rho_x, t_AB=rho_x / c,
        )
    xi_b = geom.b0 / cfg.x_B
    rho_l = rho_l_from_lab(geom, cfg.x_B)
    t_ab = light_travel_time(geom, cfg.x_B)
    xi_F = c * cfg.t / rho_x
    xi_x = cfg.t / t_ab
    if cfg.t == 0.0:
        return LightconeParams(
            xi_b=xi_b, xi_x=0.0, xi_l=0.0, xi_F=0.0,
            rho_l=rho_l, rho_x=rho_x, t_AB=t_ab,
        )
    xi_l = xi_l_from_xi_x(xi_x, xi_b, xi_F)
    direct = c * cfg.t / rho_l
    if abs(xi_l - direct) > _ROUTE_CONSISTENCY_RTOL * abs(direct):
        raise AssertionError(
            f"light-cone routes disagree: mapped {xi_l!r} vs direct {direct!r}"
        )
    return LightconeParams(
        xi_b=xi_b, xi_x=xi_x, xi_l=xi_l, xi_F=xi_F,
        rho_l=rho_l, rho_x=rho_x, t_AB=t_ab,
    )
