import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cloverwallis.quadrature import (
    NonConvergenceError,
    NonFiniteSampleError,
    Tolerance,
    integrate_singular,
)


def inv_sqrt_right(t, left, right):
    return 1.0 / np.sqrt(right)


def arcsine_density(t, left, right):
    # 1 / sqrt(1 - t^2) = 1 / sqrt((1 - t)(1 + t))
    return 1.0 / np.sqrt(right * (1.0 + t))


def test_inverse_sqrt_endpoint():
    res = integrate_singular(inv_sqrt_right, 0.0, 1.0, gaps=True)
    assert abs(res.value - 2.0) <= 1e-13
    assert res.evaluations > 0


def test_arcsine():
    res = integrate_singular(arcsine_density, 0.0, 1.0, gaps=True)
    assert abs(res.value - 1.5707963267948966) <= 1e-13


def test_constant():
    assert integrate_singular(lambda t: 1.0, 0.0, 1.0).value == pytest.approx(1.0, abs=1e-15)


def test_left_endpoint_singularity():
    res = integrate_singular(lambda t, left, right: left ** -0.5, 0.0, 4.0, gaps=True)
    assert abs(res.value - 4.0) <= 1e-13


@pytest.mark.parametrize(
    "f, a, b, truth",
    [
        (np.exp, 0.0, 1.0, math.e - 1.0),
        (np.cos, -1.0, 2.0, math.sin(2.0) + math.sin(1.0)),
        (lambda t: 1.0 / (1.0 + t * t), 0.0, 1.0, math.pi / 4),
        (np.log1p, 0.0, 1.0, 2.0 * math.log(2.0) - 1.0),
    ],
)
def test_error_estimate_bounds_actual_error(f, a, b, truth):
    res = integrate_singular(f, a, b)
    assert abs(res.value - truth) <= 10 * res.error_estimate


def test_error_estimate_bounds_singular_error():
    res = integrate_singular(inv_sqrt_right, 0.0, 1.0, gaps=True)
    assert abs(res.value - 2.0) <= 10 * res.error_estimate


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(a, b):
    f, g = np.exp, np.sin
    lhs = integrate_singular(lambda t: a * f(t) + b * g(t), 0.0, 1.5).value
    rhs = a * integrate_singular(f, 0.0, 1.5).value + b * integrate_singular(g, 0.0, 1.5).value
    assert abs(lhs - rhs) <= 10 * 1e-13 * max(1.0, abs(a) + abs(b))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 0.95))
def test_interval_additivity(c):
    f = lambda t: np.cos(3 * t) + t ** 2
    whole = integrate_singular(f, 0.0, 1.0).value
    parts = integrate_singular(f, 0.0, c).value + integrate_singular(f, c, 1.0).value
    assert abs(whole - parts) <= 10 * 1e-13


def test_batched_integrand():
    scales = np.array([[1.0], [2.0], [3.0]])
    res = integrate_singular(lambda t: scales * np.exp(t), 0.0, 1.0)
    np.testing.assert_allclose(res.value, (math.e - 1) * scales.ravel(), rtol=1e-14)


def test_deterministic():
    a = integrate_singular(arcsine_density, 0.0, 1.0, gaps=True)
    b = integrate_singular(arcsine_density, 0.0, 1.0, gaps=True)
    assert a == b


def test_non_convergence_reported():
    # a strong singularity cannot be resolved in three levels at 1e-15
    with pytest.raises(NonConvergenceError) as info:
        integrate_singular(lambda t, l, r: r ** -0.95, 0.0, 1.0,
                           Tolerance(absolute=1e-15, max_levels=3), gaps=True)
    assert info.value.result.error_estimate > 1e-15


def test_non_finite_sample_reported():
    with pytest.raises(NonFiniteSampleError):
        integrate_singular(lambda t: np.where(t > 0.5, np.nan, 1.0), 0.0, 1.0)


@pytest.mark.parametrize("lower, upper", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_bad_limits(lower, upper):
    with pytest.raises(ValueError):
        integrate_singular(np.exp, lower, upper)


@pytest.mark.parametrize("absolute", [1e-16, 1e-2, 0.0])
def test_tolerance_range(absolute):
    with pytest.raises(ValueError):
        Tolerance(absolute=absolute)


def test_nodes_never_hit_the_endpoint():
    seen = []

    def spy(t):
        seen.append(t.copy())
        return np.ones_like(t)

    integrate_singular(spy, 0.0, 1.0)
    nodes = np.concatenate(seen)
    assert nodes.min() > 0.0 and nodes.max() < 1.0
