import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyzeta.maps import (
    in_delta,
    in_hypertope,
    in_unit_cube,
    numeric_jacobian_det,
    random_delta_points,
    random_hypertope_points,
    trig_jacobian_closed,
    trig_map,
    zagier_jacobian_closed,
    zagier_map,
)

H = 1e-5


def test_trig_map_examples():
    np.testing.assert_allclose(trig_map([1 / 3, 1 / 3]), [1 / math.sqrt(3)] * 2, rtol=1e-15)
    assert np.all(trig_map([1e-9] * 4) < 1e-8)
    eps = 1e-7
    np.testing.assert_allclose(trig_map([0.5 - eps, 0.5 - eps]), [1.0, 1.0], atol=1e-6)


def test_trig_map_rejects_outside():
    with pytest.raises(ValueError):
        trig_map([0.6, 0.5])
    with pytest.raises(ValueError):
        trig_map([0.0, 0.3])


def test_trig_jacobian_examples():
    assert trig_jacobian_closed([0.0, 0.0, 0.0]) == pytest.approx((math.pi / 2) ** 3)
    s = 1 / math.sqrt(3)
    assert trig_jacobian_closed([s, s]) == pytest.approx(2 * math.pi**2 / 9, rel=1e-15)
    assert trig_jacobian_closed([0.5] * 3) == pytest.approx((math.pi / 2) ** 3 * (1 + 1 / 64), rel=1e-15)


def test_zagier_map_examples():
    np.testing.assert_allclose(zagier_map([0.7] * 5), [0.49] * 5, rtol=1e-15)
    np.testing.assert_allclose(zagier_map([0.5, 1.0]), [0.4, 0.625], rtol=1e-15)
    assert np.all(zagier_map([1e-6] * 3) < 1e-11)


def test_zagier_map_rejects_outside():
    with pytest.raises(ValueError):
        zagier_map([2.0, 0.6])
    with pytest.raises(ValueError):
        zagier_map([-0.1, 0.2])


def test_zagier_jacobian_examples():
    xi = np.array([0.5, 0.5])
    assert zagier_jacobian_closed(zagier_map(xi), xi) == pytest.approx(0.6, rel=1e-15)
    xi3 = np.array([0.5] * 3)
    x = zagier_map(xi3)
    assert zagier_jacobian_closed(x, xi3) == pytest.approx(8 * 0.125 * (1 + 1 / 64) / 1.25**3, rel=1e-15)
    tiny = np.array([1e-8, 1e-8])
    assert zagier_jacobian_closed(zagier_map(tiny), tiny) < 1e-14


def test_numeric_jacobian_examples():
    u = np.array([1 / 3, 1 / 3])
    num = numeric_jacobian_det(trig_map, u, H, domain=in_delta)
    assert num == pytest.approx(trig_jacobian_closed(trig_map(u)), rel=1e-5)
    xi = np.array([0.5, 0.5])
    num = numeric_jacobian_det(zagier_map, xi, H, domain=in_hypertope)
    assert num == pytest.approx(zagier_jacobian_closed(zagier_map(xi), xi), rel=1e-5)
    assert numeric_jacobian_det(lambda p: p, [0.2, 0.3, 0.4]) == pytest.approx(1.0, rel=1e-10)


def test_numeric_jacobian_rejects_boundary_points():
    with pytest.raises(ValueError):
        numeric_jacobian_det(trig_map, [0.5 - 5e-5, 0.5 - 5e-5], H, domain=in_delta)
    with pytest.raises(ValueError):
        numeric_jacobian_det(zagier_map, [5e-5, 0.5], H, domain=in_hypertope)


@pytest.mark.parametrize("k", range(2, 7))
def test_jacobians_at_random_points(k):
    rng = np.random.default_rng(1000 + k)
    for u in random_delta_points(k, 100, rng, margin=10 * H):
        x = trig_map(u)
        assert in_unit_cube(x)
        closed = trig_jacobian_closed(x)
        assert abs(numeric_jacobian_det(trig_map, u, H, domain=in_delta) - closed) / closed <= 1e-4
    for xi in random_hypertope_points(k, 100, rng, margin=10 * H):
        x = zagier_map(xi)
        assert in_unit_cube(x)
        closed = zagier_jacobian_closed(x, xi)
        assert closed > 0
        assert abs(numeric_jacobian_det(zagier_map, xi, H, domain=in_hypertope) - closed) / closed <= 1e-4


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=2**32 - 1))
def test_sampled_points_lie_in_their_domains(k, seed):
    rng = np.random.default_rng(seed)
    for u in random_delta_points(k, 5, rng):
        assert in_delta(u)
    for xi in random_hypertope_points(k, 5, rng):
        assert in_hypertope(xi)
