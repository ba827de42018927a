import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from cloverwallis.clover import clover_fn, varpi
from cloverwallis.moments import (
    Basis,
    MomentRangeError,
    Route,
    Which,
    moment_by_recurrence,
    moment_closed_form,
    moment_quadrature,
    recurrence_ratio,
    squeeze_diagnostic,
    telescoped_coefficient,
)


_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def sine_power_integral(n):
    """int_0^pi sin(x)^n dx from the classical double-factorial formulas."""
    ratio = double_factorial(n - 1) / double_factorial(n)
    return math.pi * ratio if n % 2 == 0 else 2.0 * ratio


def m1_moment(n):
    # 2 int_0^1 t^n (1 - t)^(-1/2) dt = 2 B(n + 1, 1/2)
    return float(2 * mpmath.beta(n + 1, 0.5))


def test_examples():
    assert moment_quadrature(2, 1).value == pytest.approx(2.0, abs=1e-13)
    assert moment_quadrature(2, 3).value == pytest.approx(4 / 3, abs=1e-13)
    for m in (1, 3, 6):
        assert moment_quadrature(m, 0).value == pytest.approx(varpi(m), abs=1e-13)


@pytest.mark.parametrize("n", range(0, 25))
def test_sine_powers(n):
    assert moment_quadrature(2, n).value == pytest.approx(sine_power_integral(n), abs=1e-13)


@pytest.mark.parametrize("n", [0, 1, 5, 20, 100, 200])
def test_m1_against_beta(n):
    assert moment_quadrature(1, n).value == pytest.approx(m1_moment(n), rel=1e-12)


@pytest.mark.parametrize("m, n", [(2, 3), (3, 2), (4, 5), (5, 1)])
def test_reduction_matches_direct_sampling(m, n):
    # trapezoid over 1e5 samples of phi_m itself, independent of the reduced integral
    x = np.linspace(0.0, varpi(m), 100_000)
    direct = _trapezoid(clover_fn(m, x) ** n, x)
    assert abs(direct - moment_quadrature(m, n).value) <= 1e-6


def test_route_and_positivity():
    value = moment_quadrature(4, 7)
    assert value.route is Route.QUADRATURE and value.value > 0


def test_large_index_refused():
    assert moment_quadrature(3, 200).value > 0
    with pytest.raises(MomentRangeError):
        moment_quadrature(3, 201)


def test_recurrence_ratio_examples():
    assert recurrence_ratio(2, 0) == Fraction(1, 2)
    assert recurrence_ratio(1, 0) == Fraction(2, 3)
    assert recurrence_ratio(4, 3) == Fraction(2, 3)


@pytest.mark.parametrize("m", range(1, 7))
def test_recurrence_against_quadrature(m):
    for n in range(13):
        ratio = moment_quadrature(m, n + m).value / moment_quadrature(m, n).value
        assert abs(ratio - float(recurrence_ratio(m, n))) <= 1e-9


@pytest.mark.parametrize("m", range(1, 9))
def test_table_two(m):
    total = varpi(m)
    assert abs(moment_quadrature(m, 0).value - total) <= 1e-10
    assert abs(moment_quadrature(m, m - 1).value - 4 / m) <= 1e-10
    assert abs(moment_quadrature(m, m).value - 2 * total / (m + 2)) <= 1e-10


@pytest.mark.parametrize("m", [1, 3, 8])
def test_monotone_in_n(m):
    values = [moment_quadrature(m, n).value for n in range(40)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_closed_form_examples():
    c = moment_closed_form(2, 2, Which.AT_MN)
    assert c.coefficient == Fraction(3, 8) and c.basis is Basis.VARPI and c.index == 4
    assert c.value() == pytest.approx(3 * math.pi / 8, abs=1e-14)
    d = moment_closed_form(2, 2, "at_mn_minus_1")
    assert d.coefficient == Fraction(2, 3) and d.basis is Basis.FOUR_OVER_M and d.index == 3
    assert d.value() == pytest.approx(4 / 3, abs=1e-14)
    for m in range(1, 10):
        assert moment_closed_form(m, 1).coefficient == Fraction(2, m + 2)


def test_closed_form_rejects_zero():
    with pytest.raises(ValueError):
        moment_closed_form(3, 0)


@pytest.mark.parametrize("m", range(1, 21))
def test_closed_form_equals_telescoped_recurrence(m):
    for n in range(1, 21):
        for which in Which:
            assert moment_closed_form(m, n, which).coefficient == telescoped_coefficient(m, n, which)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_closed_form_numeric(m):
    for n in range(1, 8):
        for which in Which:
            c = moment_closed_form(m, n, which)
            assert abs(c.value() - moment_quadrature(m, c.index).value) <= 1e-10


def test_recurrence_route():
    for m in (1, 3, 4):
        for n in range(0, 15):
            rec = moment_by_recurrence(m, n)
            assert rec.route is Route.RECURRENCE
            assert rec.value == pytest.approx(moment_quadrature(m, n).value, abs=1e-12)


def test_squeeze_examples():
    d = squeeze_diagnostic(2, 0)
    assert d.ratio_n1_n == pytest.approx(2 / math.pi, abs=1e-13)
    assert d.lower_bound == Fraction(1, 2)
    e = squeeze_diagnostic(1, 0)
    assert e.lower_bound == Fraction(2, 3)
    assert e.ratio_n1_n == pytest.approx(m1_moment(1) / m1_moment(0), abs=1e-13)
    assert d.holds() and e.holds()


@pytest.mark.parametrize("m", [1, 2, 5])
def test_squeeze_tends_to_one(m):
    gaps = [1 - squeeze_diagnostic(m, n).ratio_n1_n for n in (10, 50, 190)]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert gaps[2] < m / (2 * 191 + m) + 1e-9
