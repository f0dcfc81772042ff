import math

import numpy as np
import pytest

from wormhole_harvest import (
    QubitPairConfig,
    WormholeGeometry,
    light_travel_time,
    light_travel_time_quadrature,
    params_from_physical,
    rho_l_from_lab,
    xi_l_from_xi_x,
)

OM = 2.0 * math.pi


def _pair(**kw):
    defaults = dict(x_B=1.0, omega=OM, coupling=7.5e-3, t=0.5)
    defaults.update(kw)
    return QubitPairConfig(**defaults)


def test_pair_validation():
    for bad in (dict(x_B=0.0), dict(omega=-1.0), dict(coupling=0.0), dict(t=-0.1)):
        with pytest.raises(ValueError):
            _pair(**bad)


def test_pair_derived_quantities():
    cfg = _pair(coupling=0.01, t=2.0)
    assert cfg.g == pytest.approx(OM * 0.1, rel=1e-15)
    assert cfg.rho_x == 2.0
    assert cfg.k_omega_t == pytest.approx(0.01 * OM * 2.0, rel=1e-15)


def test_pair_validity_warning():
    with pytest.warns(UserWarning, match="validity bound"):
        _pair(coupling=0.1, t=10.0)


def test_rho_l_values():
    assert rho_l_from_lab(WormholeGeometry(0.0, 1.0), 1.0) == 2.0
    assert rho_l_from_lab(WormholeGeometry(4.0, 1.0), 1.0) == pytest.approx(6.0, rel=1e-15)
    assert rho_l_from_lab(WormholeGeometry(1.0, 1.0), 2.0) == pytest.approx(4.0 * math.sqrt(2.0), rel=1e-15)
    with pytest.raises(ValueError):
        rho_l_from_lab(WormholeGeometry(1.0, 1.0), 0.0)


def test_light_travel_time_flat():
    geom = WormholeGeometry(0.0, 2.0)
    assert light_travel_time(geom, 1.0) == 1.0
    assert light_travel_time_quadrature(geom, 1.0) == 1.0


def test_light_travel_time_against_quadrature():
    geom = WormholeGeometry(1.0, 1.0)
    closed = light_travel_time(geom, 1.0)
    quad = light_travel_time_quadrature(geom, 1.0)
    assert closed == pytest.approx(quad, rel=1e-8)
    assert closed == pytest.approx(2.0 * math.sqrt(3.0), rel=1e-12)


def test_light_travel_time_quadrature_grid():
    for xi_b in (1e-6, 1e-3, 0.1, 1.0, 30.0, 1e3):
        geom = WormholeGeometry(xi_b, 1.0)
        assert light_travel_time(geom, 1.0) == pytest.approx(
            light_travel_time_quadrature(geom, 1.0), rel=1e-8
        )


def test_light_travel_time_continuity_at_flat():
    geom = WormholeGeometry(1e-9, 1.0)
    assert light_travel_time(geom, 1.0) == pytest.approx(2.0, rel=1e-6)


def test_xi_l_map_flat():
    assert xi_l_from_xi_x(0.7, 0.0, 12.3) == 0.7


def test_xi_l_map_continuous_near_flat():
    lo = xi_l_from_xi_x(0.7, 1e-9, 0.7)
    hi = xi_l_from_xi_x(0.7, 1e-7, 0.7 * math.sqrt(1.0 + 2e-7))
    assert lo == pytest.approx(0.7, rel=1e-9)
    assert hi == pytest.approx(0.7, rel=1e-9)


def test_xi_l_map_domain():
    with pytest.raises(ValueError):
        xi_l_from_xi_x(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        xi_l_from_xi_x(1.0, 1.0, -2.0)
    with pytest.raises(ValueError):
        xi_l_from_xi_x(1.0, -0.5, 1.0)


def test_params_flat_bitwise_degeneracy():
    geom = WormholeGeometry(0.0, 1.0)
    params = params_from_physical(geom, _pair(x_B=1.0, t=2.0))
    assert params.xi_F == 1.0
    assert params.xi_x == params.xi_F and params.xi_l == params.xi_F
    assert params.rho_l == params.rho_x == 2.0


def test_params_xi_x_definition():
    geom = WormholeGeometry(0.3, 1.0)
    t_ab = light_travel_time(geom, 1.0)
    params = params_from_physical(geom, _pair(t=t_ab))
    assert params.xi_x == 1.0


def test_params_worked_example():
    # b0 = 4 x_B makes rho_l = 3 rho_x; with xi_F = 1 the free-falling
    # light-cone parameter is exactly 1/3
    geom = WormholeGeometry(4.0, 1.0)
    params = params_from_physical(geom, _pair(t=2.0))
    assert params.xi_F == 1.0
    assert params.xi_l == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert params.epsilon_b == params.xi_b == 4.0


def test_params_zero_time():
    geom = WormholeGeometry(2.0, 1.0)
    params = params_from_physical(geom, _pair(t=0.0))
    assert params.xi_x == params.xi_l == params.xi_F == 0.0
    assert params.t_AB > 0.0


def test_route_independence_grid():
    for b0 in np.logspace(-4, 2, 10):
        geom = WormholeGeometry(float(b0), 1.0)
        for t in np.linspace(0.05, 8.0, 10):
            params = params_from_physical(geom, _pair(t=float(t)))
            direct = t / params.rho_l
            assert params.xi_l == pytest.approx(direct, rel=1e-10)


def test_xi_x_monotone_in_throat_size():
    values = []
    for b0 in (0.0, 0.1, 0.5, 1.0, 5.0, 20.0):
        geom = WormholeGeometry(b0, 1.0)
        values.append(params_from_physical(geom, _pair(t=1.0)).xi_x)
    assert all(a > b for a, b in zip(values, values[1:]))


def test_rho_l_exceeds_rho_x():
    for b0 in (1e-6, 0.3, 7.0):
        geom = WormholeGeometry(b0, 1.0)
        params = params_from_physical(geom, _pair(t=1.0))
        assert params.rho_l > params.rho_x
