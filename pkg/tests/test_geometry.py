import math

import pytest
from hypothesis import given, strategies as st

from wormhole_harvest import (
    WormholeGeometry,
    effective_speed,
    lab_from_radial,
    proper_radial,
    shape,
)

MM = 1e-3

finite_lengths = st.floats(min_value=1e-9, max_value=1e9, allow_nan=False)
signed_lengths = st.floats(min_value=-1e9, max_value=1e9, allow_nan=False)


def test_geometry_validation():
    with pytest.raises(ValueError):
        WormholeGeometry(b0=-1.0, c_flat=1.0)
    with pytest.raises(ValueError):
        WormholeGeometry(b0=1.0, c_flat=0.0)
    assert WormholeGeometry(b0=0.0, c_flat=1.0).is_flat


def test_shape_throat_condition():
    geom = WormholeGeometry(b0=1 * MM, c_flat=1.0)
    assert shape(geom, 1 * MM) == pytest.approx(1 * MM, rel=1e-15)
    assert shape(geom, 2 * MM) == pytest.approx(0.5 * MM, rel=1e-15)
    geom = WormholeGeometry(b0=0.5 * MM, c_flat=1.0)
    assert shape(geom, 5 * MM) == pytest.approx(0.05 * MM, rel=1e-15)


def test_shape_domain_errors():
    geom = WormholeGeometry(b0=1.0, c_flat=1.0)
    with pytest.raises(ValueError):
        shape(geom, 0.5)
    with pytest.raises(ValueError):
        shape(WormholeGeometry(b0=0.0, c_flat=1.0), 1.0)


def test_shape_monotone_decreasing():
    geom = WormholeGeometry(b0=2.0, c_flat=1.0)
    values = [shape(geom, r) for r in (2.0, 3.0, 5.0, 10.0, 100.0)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_lab_from_radial():
    geom = WormholeGeometry(b0=1.0, c_flat=1.0)
    assert lab_from_radial(geom, 1.0) == 0.0
    assert lab_from_radial(geom, 3.0) == 2.0
    assert lab_from_radial(WormholeGeometry(b0=0.0, c_flat=1.0), 7.0) == 7.0
    with pytest.raises(ValueError):
        lab_from_radial(geom, 0.9)


def test_proper_radial_values():
    assert proper_radial(WormholeGeometry(b0=3.0, c_flat=1.0), 0.0) == 0.0
    assert proper_radial(WormholeGeometry(b0=0.0, c_flat=1.0), -3.0) == -3.0
    assert proper_radial(WormholeGeometry(b0=4.0, c_flat=1.0), 1.0) == pytest.approx(3.0, rel=1e-15)


@given(b0=st.floats(min_value=0.0, max_value=1e6), x=signed_lengths)
def test_proper_radial_odd(b0, x):
    geom = WormholeGeometry(b0=b0, c_flat=1.0)
    assert proper_radial(geom, -x) == -proper_radial(geom, x)


@given(x=st.floats(min_value=0.0, max_value=1e9))
def test_lab_radial_round_trip(x):
    geom = WormholeGeometry(b0=0.75, c_flat=1.0)
    assert lab_from_radial(geom, geom.b0 + x) == pytest.approx(x, rel=1e-12, abs=1e-15)


def test_proper_radial_square_identity():
    # relative precision 1e-12 out to |x| = 1e6 b0
    geom = WormholeGeometry(b0=1.0, c_flat=1.0)
    for exponent in range(-3, 7):
        x = 10.0**exponent
        lsq = proper_radial(geom, x) ** 2
        assert lsq == pytest.approx(x * (x + 2.0 * geom.b0), rel=1e-12)


def test_effective_speed_values():
    flat = WormholeGeometry(b0=0.0, c_flat=3.1e8)
    assert effective_speed(flat, 12.34) == 3.1e8
    geom = WormholeGeometry(b0=1.0, c_flat=1.0)
    assert effective_speed(geom, 0.0) == 0.0
    assert effective_speed(geom, 1.0) == pytest.approx(math.sqrt(3.0) / 2.0, rel=1e-15)


@given(x=st.floats(min_value=1e-12, max_value=1e6))
def test_effective_speed_strictly_subluminal(x):
    # strictness is resolvable in doubles out to x/b0 ~ 1e7; beyond that the
    # speed rounds to c_flat, which the asymptotics test covers instead
    geom = WormholeGeometry(b0=0.5, c_flat=2.0)
    v = effective_speed(geom, x)
    assert 0.0 < v < geom.c_flat
    assert effective_speed(geom, -x) == v


def test_effective_speed_asymptotics():
    geom = WormholeGeometry(b0=1e-3, c_flat=1.0)
    assert effective_speed(geom, 1e6) == pytest.approx(1.0, rel=1e-12)


def test_flat_limit_degeneracy():
    geom = WormholeGeometry(b0=0.0, c_flat=1.5)
    for x in (-2.0, -0.1, 0.0, 0.3, 7.0):
        assert proper_radial(geom, x) == x
        assert effective_speed(geom, x) == 1.5
