"""One-dimensional section of a massless traversable-wormhole spacetime.

The geometry is characterised by a single throat radius ``b0``.  Radial
coordinate ``r >= b0`` covers one branch; the transmission-line (lab)
coordinate ``x`` covers both branches through ``|x| = r - b0``, with the
throat sitting at ``x = 0``.  ``b0 = 0`` is ordinary flat spacetime and is
a fully supported value, not an error.

All lengths are metres, speeds metres/second, stored as plain floats.
Dimensionless ratios are always formed explicitly by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class WormholeGeometry:
    """Throat radius and the asymptotic propagation speed of the line."""

    b0: float
    c_flat: float

    def __post_init__(self) -> None:
        if self.b0 < 0.0:
            raise ValueError(f"throat radius must be >= 0, got {self.b0}")
        if self.c_flat <= 0.0:
            raise ValueError(f"flat-space speed must be > 0, got {self.c_flat}")

    @property
    def is_flat(self) -> bool:
        return self.b0 == 0.0


def shape(geom: WormholeGeometry, r: float) -> float:
    """Shape function b(r) = b0^2 / r, defined for r >= b0 > 0.

    Decreases monotonically from b(b0) = b0 (throat condition) towards zero.
    """
    if geom.b0 == 0.0:
        raise ValueError("flat geometry (b0 = 0) has no shape function")
    if r < geom.b0:
        raise ValueError(f"r = {r} lies inside the throat radius {geom.b0}")
    return geom.b0 * geom.b0 / r


def lab_from_radial(geom: WormholeGeometry, r: float) -> float:
    """Lab-coordinate distance |x| = r - b0 of the radius r from the throat."""
    if r < geom.b0:
        raise ValueError(f"r = {r} lies inside the throat radius {geom.b0}")
    return r - geom.b0


def proper_radial(geom: WormholeGeometry, x: float) -> float:
    """Proper radial position l(x) = sign(x) sqrt(|x| (|x| + 2 b0)).

    Odd in x, vanishes at the throat, and reduces exactly to x when b0 = 0.
    The sign convention ties the branch of l to the sign of x.
    """
    if geom.b0 == 0.0:
        return x
    ax = abs(x)
    return math.copysign(math.sqrt(ax * (ax + 2.0 * geom.b0)), x)


def effective_speed(geom: WormholeGeometry, x: float) -> float:
    """Local propagation speed c(x) = c sqrt(1 - b0^2 / (|x| + b0)^2).

    Even in x, approaches c_flat far from the throat and vanishes at x = 0,
    where the metric coefficient itself vanishes.  The zero is integrable:
    downstream quadrature must treat x = 0 as a 1/sqrt(|x|) endpoint.
    """
    if geom.b0 == 0.0:
        return geom.c_flat
    ratio = geom.b0 / (abs(x) + geom.b0)
    return geom.c_flat * math.sqrt(max(0.0, 1.0 - ratio * ratio))
