import math

import numpy as np
import pytest

from wormhole_harvest import (
    ArraySpec,
    WormholeGeometry,
    discretize_profile,
    effective_speed,
    feasibility,
    flux_profile,
    thermal_occupation,
)
from wormhole_harvest.constants import FLUX_QUANTUM
from wormhole_harvest.squid_map import write_flux_table

MM = 1e-3
GHZ10 = 2.0 * math.pi * 1e10


def test_flux_profile_values():
    geom = WormholeGeometry(b0=1 * MM, c_flat=1.0)
    assert flux_profile(geom, 0.0) == pytest.approx(FLUX_QUANTUM / 2.0, rel=1e-15)
    flat = WormholeGeometry(b0=0.0, c_flat=1.0)
    assert flux_profile(flat, 0.37) == 0.0
    geom = WormholeGeometry(b0=1.0, c_flat=1.0)
    expected = FLUX_QUANTUM / math.pi * math.acos(0.75)
    assert flux_profile(geom, 1.0) == pytest.approx(expected, rel=1e-15)
    assert expected / FLUX_QUANTUM == pytest.approx(0.2301, abs=5e-5)


def test_flux_profile_even_bounded_decreasing():
    geom = WormholeGeometry(b0=2.0, c_flat=1.0)
    xs = np.linspace(0.0, 50.0, 201)
    values = np.array([flux_profile(geom, x) for x in xs])
    assert np.all(values >= 0.0) and np.all(values <= FLUX_QUANTUM / 2.0)
    assert np.all(np.diff(values) < 0.0)
    for x in (0.1, 1.0, 10.0):
        assert flux_profile(geom, -x) == flux_profile(geom, x)


def test_flux_speed_consistency():
    # the arccos argument of the bias equals the squared speed ratio
    geom = WormholeGeometry(b0=0.7, c_flat=2.5)
    for x in (0.0, 0.1, 1.0, 42.0):
        ratio_sq = (effective_speed(geom, x) / geom.c_flat) ** 2
        arg = math.cos(math.pi * flux_profile(geom, x) / FLUX_QUANTUM)
        assert ratio_sq + (1.0 - arg) == pytest.approx(1.0, abs=1e-12)


def test_array_spec_validation():
    with pytest.raises(ValueError):
        ArraySpec(cell_pitch=0.0, n_cells=10)
    with pytest.raises(ValueError):
        ArraySpec(cell_pitch=1e-6, n_cells=0)


def test_discretize_flat_all_zero():
    table = discretize_profile(WormholeGeometry(b0=0.0, c_flat=1.0), ArraySpec(1e-5, 11))
    assert all(flux == 0.0 for _, flux in table)


def test_discretize_center_peak_and_symmetry():
    geom = WormholeGeometry(b0=1 * MM, c_flat=1.0)
    table = discretize_profile(geom, ArraySpec(10e-6, 3))
    fluxes = [f for _, f in table]
    assert fluxes[1] == max(fluxes)
    assert fluxes[0] == fluxes[2]


def test_discretize_matches_continuous_profile():
    geom = WormholeGeometry(b0=1 * MM, c_flat=1.0)
    array = ArraySpec(cell_pitch=10e-6, n_cells=1000)
    for cell, flux in discretize_profile(geom, array):
        x = (cell - (array.n_cells - 1) / 2.0) * array.cell_pitch
        assert flux == pytest.approx(flux_profile(geom, x), rel=1e-12)


def test_flux_table_format(tmp_path):
    geom = WormholeGeometry(b0=1 * MM, c_flat=1.0)
    path = tmp_path / "flux.txt"
    write_flux_table(str(path), geom, ArraySpec(10e-6, 5))
    lines = path.read_text().splitlines()
    assert lines[0] == "# cell flux_phi0"
    assert len(lines) == 6
    for i, line in enumerate(lines[1:]):
        cell, value = line.split()
        assert int(cell) == i
        assert 0.0 <= float(value) <= 0.5


def test_thermal_occupation_reference_points():
    # hbar Omega = kB T ln 2  =>  exactly one photon
    t = 0.030
    omega = math.log(2.0) * 1.380649e-23 * t / 1.054571817e-34
    assert thermal_occupation(omega, t) == pytest.approx(1.0, rel=1e-12)
    # vacuum limit
    assert thermal_occupation(GHZ10, 1e-6) == 0.0


def test_thermal_occupation_high_precision():
    # frozen from a 50-digit evaluation of the closed form
    assert thermal_occupation(GHZ10, 0.030) == pytest.approx(1.1281948328956374e-07, rel=1e-12)
    assert thermal_occupation(GHZ10, 0.005) == pytest.approx(2.0620744635513116e-42, rel=1e-11)


def test_thermal_occupation_monotonicity():
    temps = [0.005, 0.010, 0.030, 0.100, 0.300]
    occ = [thermal_occupation(GHZ10, t) for t in temps]
    assert all(a < b for a, b in zip(occ, occ[1:]))
    freqs = [0.5 * GHZ10, GHZ10, 2.0 * GHZ10]
    occ = [thermal_occupation(f, 0.030) for f in freqs]
    assert all(a > b for a, b in zip(occ, occ[1:]))


def test_thermal_occupation_domain():
    with pytest.raises(ValueError):
        thermal_occupation(-1.0, 0.03)
    with pytest.raises(ValueError):
        thermal_occupation(GHZ10, 0.0)


def test_feasibility_wavelength():
    geom = WormholeGeometry(b0=0.25 * MM, c_flat=1e6)
    report = feasibility(geom, GHZ10, rho_x=1e-4, temperature=0.030)
    assert report.wavelength == pytest.approx(1e-4, rel=1e-12)
    assert report.epsilon_b == pytest.approx(5.0, rel=1e-12)
    assert report.feasible
    assert not report.flat


def test_feasibility_flat():
    geom = WormholeGeometry(b0=0.0, c_flat=1e6)
    report = feasibility(geom, GHZ10, rho_x=1e-4, temperature=0.030)
    assert report.epsilon_b == 0.0
    assert report.flat and not report.feasible


def test_feasibility_throat_cap():
    # epsilon_b reached but the throat is above the fabrication cap
    geom = WormholeGeometry(b0=5e-3, c_flat=1e6)
    report = feasibility(geom, GHZ10, rho_x=2e-3, temperature=0.030)
    assert report.epsilon_b == pytest.approx(5.0)
    assert not report.feasible
