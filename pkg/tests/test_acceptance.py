"""Acceptance gate: one test per criterion at its stated tolerance."""

import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from cloverwallis import clover
from cloverwallis.clover import (
    clover_fn,
    clover_fn_and_derivative,
    leaf_count,
    sample_curve,
    varpi,
    varpi_beta_oracle,
)
from cloverwallis.congruence_gamma import cong_gamma, cong_gamma_closed_form, printed_closed_form
from cloverwallis.moments import (
    Which,
    moment_closed_form,
    moment_quadrature,
    recurrence_ratio,
    telescoped_coefficient,
)
from cloverwallis.wallis import (
    estimate_varpi,
    limit_formula,
    partial_product,
    partial_products_at,
    product_term,
)

criterion = pytest.mark.criterion

LEMNISCATE_QUOTED = 2.6220575549


def _grid(m):
    return np.linspace(0.0, varpi(m), 1000)


@criterion(1, "varpi_2 = pi within 1e-12, under 1 s")
def test_c01_varpi_circle():
    clover._varpi.cache_clear()
    start = time.perf_counter()
    value = varpi(2)
    elapsed = time.perf_counter() - start
    assert abs(value - 3.14159265358979) <= 1e-12
    assert elapsed < 1.0


@criterion(2, "varpi_4 matches the quoted 2.6220575549 within 5e-11")
def test_c02_lemniscate_quoted_digits():
    # The quoted digits differ from the true constant by about 6.1e-10,
    # so this cannot pass for a correct implementation.
    assert abs(varpi(4) - LEMNISCATE_QUOTED) <= 5e-11


@criterion(3, "quadrature, Beta and accelerated product agree within 1e-9 for m <= 12, under 30 s")
def test_c03_three_routes():
    start = time.perf_counter()
    worst = 0.0
    for m in range(1, 13):
        values = [varpi(m), varpi_beta_oracle(m), estimate_varpi(m, 1e-10).value]
        worst = max(worst, max(values) - min(values))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-9
    assert elapsed < 30.0


@criterion(4, "moment ratio I(n+m)/I(n) matches 2(n+1)/(2(n+1)+m) within 1e-9")
def test_c04_recurrence():
    for m in range(1, 7):
        for n in range(13):
            ratio = moment_quadrature(m, n + m).value / moment_quadrature(m, n).value
            assert abs(ratio - float(recurrence_ratio(m, n))) <= 1e-9, (m, n)


@criterion(5, "phi^m + phi'^2 = 1 within 1e-10 analytic and 1e-5 by finite differences")
def test_c05_pythagorean():
    h = 1e-6
    for m in range(1, 9):
        x = _grid(m)
        phi, slope = clover_fn_and_derivative(m, x)
        assert np.max(np.abs(phi**m + slope**2 - 1)) <= 1e-10, m
        inner = x[(x - h >= 0) & (x + h <= varpi(m))]
        fd = (clover_fn(m, inner + h) - clover_fn(m, inner - h)) / (2 * h)
        assert np.max(np.abs(clover_fn(m, inner) ** m + fd**2 - 1)) <= 1e-5, m


@criterion(6, "second difference of phi matches -(m/2) phi^(m-1) within 1e-4")
def test_c06_second_derivative():
    h = 1e-3
    for m in range(1, 9):
        x = _grid(m)[1:-1]
        x = x[(x - h >= 0) & (x + h <= varpi(m))]
        centre = clover_fn(m, x)
        d2 = (clover_fn(m, x + h) - 2 * centre + clover_fn(m, x - h)) / h**2
        assert np.max(np.abs(d2 + 0.5 * m * centre ** (m - 1))) <= 1e-4, m


@criterion(7, "phi and phi' at 0, varpi/2 and varpi equal (0,1), (1,0), (0,-1) within 1e-10")
def test_c07_table_one():
    for m in range(1, 9):
        w = varpi(m)
        for x, expected in ((0.0, (0, 1)), (w / 2, (1, 0)), (w, (0, -1))):
            phi, slope = clover_fn_and_derivative(m, x)
            assert abs(phi - expected[0]) <= 1e-10 and abs(slope - expected[1]) <= 1e-10, (m, x)


@criterion(8, "moment anchors and classical sine-power values within 1e-10")
def test_c08_table_two():
    for m in range(1, 9):
        w = varpi(m)
        assert abs(moment_quadrature(m, 0).value - w) <= 1e-10
        assert abs(moment_quadrature(m, m - 1).value - 4 / m) <= 1e-10
        assert abs(moment_quadrature(m, m).value - 2 * w / (m + 2)) <= 1e-10
    assert abs(moment_quadrature(2, 2).value - math.pi / 2) <= 1e-10
    assert abs(moment_quadrature(2, 3).value - 4 / 3) <= 1e-10
    assert abs(moment_quadrature(2, 4).value - 3 * math.pi / 8) <= 1e-10


@criterion(9, "closed-form moment coefficients equal the telescoped recurrence exactly")
def test_c09_closed_form_exact():
    for m in range(1, 21):
        for n in range(1, 21):
            for which in Which:
                closed = moment_closed_form(m, n, which).coefficient
                assert type(closed) is Fraction
                assert closed == telescoped_coefficient(m, n, which), (m, n, which)


@criterion(10, "limit_formula(m, n) equals partial_product(m, n-1) exactly")
def test_c10_index_identity():
    for m in range(1, 11):
        for n in range(1, 51):
            assert limit_formula(m, n) == partial_product(m, n - 1).exact, (m, n)


@criterion(11, "N * (P_N - varpi) varies by under 20% and P_N decreases above varpi")
def test_c11_convergence_order():
    checkpoints = [10**3, 10**4, 10**5]
    for m in (1, 2, 4):
        w = varpi(m)
        values = partial_products_at(m, checkpoints)
        scaled = [N * (p - w) for N, p in zip(checkpoints, values)]
        assert (max(scaled) - min(scaled)) / min(scaled) < 0.2, (m, scaled)
        assert all(p > w for p in values)
        assert all(b < a for a, b in zip(values, values[1:]))
        # each factor is below one, so the whole sequence decreases
        assert all(product_term(m, n) < 1 for n in range(1, 10**5 + 1, 997))


@criterion(12, "corrected Gamma closed form within 1e-12 relative, printed form gives 1/4 at (2,1,1)")
def test_c12_cong_gamma_closed_form():
    worst = mpmath.mpf(0)
    for m in range(1, 301):
        for k in range(1, m + 1):
            for n in range(0, (300 - k) // m + 1):
                exact = cong_gamma(m, n, k, strict=False)
                closed = cong_gamma_closed_form(m, n, k, strict=False)
                worst = max(worst, abs(closed / exact - 1))
    assert worst <= 1e-12
    assert cong_gamma(2, 1, 1) == 1
    assert printed_closed_form(2, 1, 1) == mpmath.mpf(1) / 4


@criterion(13, "m=2 curve lies on the circle within 1e-12, leaf counts for m <= 9")
def test_c13_rendering():
    for p in sample_curve(2, principal_only=False, samples=721):
        assert abs((p.x - 0.5) ** 2 + p.y**2 - 0.25) <= 1e-12
    for m in range(1, 10):
        expected = m if m % 2 else m // 2
        assert leaf_count(m) == expected
        assert len({p.leaf for p in sample_curve(m, principal_only=False)}) == expected
