"""Machine checks of every identity, one row per (identity, m, n).

Each row records the measured residual and the tolerance it is held to.
Exact identities are compared as integers or fractions and report a
residual of exactly 0 when they hold.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from . import clover, moments, wallis
from .congruence_gamma import cong_gamma, cong_gamma_closed_form, printed_closed_form

__all__ = [
    "CheckRow",
    "DEFAULT_M",
    "DEFAULT_N",
    "LEMNISCATE_PRINTED",
    "run_verification",
]

DEFAULT_M = range(1, 7)
DEFAULT_N = range(0, 13)
# A ten-digit value of the lemniscate constant in circulation; its
# tenth decimal is off (the constant is 2.62205755429...).
LEMNISCATE_PRINTED = 2.6220575549
GRID_POINTS = 1000
FD_STEP = 1e-6
FD2_STEP = 1e-3


@dataclass(frozen=True)
class CheckRow:
    identity: str
    m: int | None
    n: int | None
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)

    def sort_key(self):
        return (self.identity, -1 if self.m is None else self.m, -1 if self.n is None else self.n)


def _row(identity, m, n, residual, tolerance, detail="", passed=None) -> CheckRow:
    residual = float(residual)
    if passed is None:
        passed = residual <= tolerance
    return CheckRow(identity, m, n, residual, float(tolerance), bool(passed), detail)


# -- congruence Gamma -------------------------------------------------------

def _enumerated(m, n, k) -> int:
    """Product of the class ``k mod m`` inside ``[1, mn)``; empty product 1."""
    return math.prod(i for i in range(1, m * n) if i % m == k)


def check_cong_gamma(ms, ns) -> Iterator[CheckRow]:
    for m in ms:
        for n in ns:
            worst = 0
            for k in range(m):
                value = cong_gamma(m, n, k)
                step = cong_gamma(m, n + 1, k)
                expected = 1 if (n == 0 and k == 0) else (m * n + k) * value
                worst = max(worst, abs(step - expected), abs(value - _enumerated(m, n, k)))
            yield _row("cong_gamma.recursion", m, n, worst, 0.0)
            rel = 0.0
            ks = [k for k in range(1, m) if m * n + k <= 300]
            for k in ks:
                exact = cong_gamma(m, n, k)
                rel = max(rel, float(abs(cong_gamma_closed_form(m, n, k) - exact) / exact))
            if ks:
                yield _row("cong_gamma.closed_form", m, n, rel, 1e-12)
        yield _row("cong_gamma.factorial", m, None,
                   max(abs(cong_gamma(1, n, 0) - math.factorial(n - 1)) for n in range(1, 101)),
                   0.0, "Γ_1(n,0) = (n-1)! for n <= 100")
    printed = float(printed_closed_form(2, 1, 1))
    yield _row("cong_gamma.printed_form_discrepancy", 2, 1, abs(printed - 0.25), 1e-12,
               f"printed arrangement gives {printed:g}, recursion gives {cong_gamma(2, 1, 1)}",
               passed=abs(printed - 0.25) <= 1e-12 and abs(printed - cong_gamma(2, 1, 1)) > 0.5)


# -- constants ----------------------------------------------------------------

def check_constants(ms, tol) -> Iterator[CheckRow]:
    for m in ms:
        quad = clover.varpi(m)
        beta = clover.varpi_beta_oracle(m)
        product = wallis.estimate_varpi(m, max(tol / 10.0, 1e-10)).value
        spread = max(quad, beta, product) - min(quad, beta, product)
        yield _row("varpi.three_routes", m, None, spread, tol,
                   f"quadrature={quad!r} beta={beta!r} product={product!r}")
    if 1 in ms:
        yield _row("varpi.anchor", 1, None, abs(clover.varpi(1) - 4.0), 1e-12, "varpi_1 = 4")
    if 2 in ms:
        yield _row("varpi.anchor", 2, None, abs(clover.varpi(2) - math.pi), 1e-12, "varpi_2 = pi")
    if 4 in ms:
        truth = clover.varpi_beta_oracle(4)
        yield _row("varpi.anchor", 4, None, abs(clover.varpi(4) - truth), 1e-12,
                   "lemniscate constant vs Gamma(1/4)^2/(2 sqrt(2 pi))")
        gap = abs(clover.varpi(4) - LEMNISCATE_PRINTED)
        # Documented discrepancy: the quoted digits agree only to 9 decimals.
        yield _row("varpi.lemniscate_quoted_digits", 4, None, gap, 5e-9,
                   f"quoted 2.6220575549 differs by {gap:.2e}; agreement holds to 9 decimals only")


# -- clover function ------------------------------------------------------

def check_clover(ms) -> Iterator[CheckRow]:
    for m in ms:
        total = clover.varpi(m)
        x = np.linspace(0.0, total, GRID_POINTS)
        interior = x[1:-1]
        inner2 = x[(x > FD2_STEP) & (x < total - FD2_STEP)]
        pts = np.concatenate([x, interior - FD_STEP, interior + FD_STEP,
                              inner2 - FD2_STEP, inner2 + FD2_STEP])
        phi_all = clover.clover_fn(m, pts)
        phi = phi_all[:GRID_POINTS]
        k = GRID_POINTS
        minus, plus = phi_all[k:k + interior.size], phi_all[k + interior.size:k + 2 * interior.size]
        k += 2 * interior.size
        minus2, plus2 = phi_all[k:k + inner2.size], phi_all[k + inner2.size:]
        slope = clover.clover_fn_derivative(m, x)

        yield _row("clover.pythagorean", m, None,
                   np.max(np.abs(phi ** m + slope ** 2 - 1.0)), 1e-10)
        fd = (plus - minus) / (2 * FD_STEP)
        yield _row("clover.pythagorean_fd", m, None,
                   np.max(np.abs(phi[1:-1] ** m + fd ** 2 - 1.0)), 1e-5, f"h = {FD_STEP:g}")
        yield _row("clover.derivative_fd", m, None,
                   np.max(np.abs(fd - slope[1:-1])), 1e-5, f"h = {FD_STEP:g}")
        centre = clover.clover_fn(m, inner2)
        second = (plus2 - 2 * centre + minus2) / FD2_STEP ** 2
        yield _row("clover.second_derivative", m, None,
                   np.max(np.abs(second + 0.5 * m * centre ** (m - 1))), 1e-4, f"h = {FD2_STEP:g}")

        rising = x[x <= 0.5 * total]
        back = clover.arc_length(m, clover.clover_fn(m, rising))
        yield _row("clover.inverse_roundtrip", m, None, np.max(np.abs(back - rising)), 1e-10)

        mirrored = total - rising
        both = clover.clover_fn(m, np.concatenate([mirrored, total - mirrored]))
        yield _row("clover.symmetry", m, None,
                   np.max(np.abs(both[:rising.size] - both[rising.size:])), 0.0)

        anchors = np.array([0.0, 0.5 * total, total])
        value, slope_a = clover.clover_fn_and_derivative(m, anchors)
        expected = np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.0, -1.0])
        yield _row("clover.table1", m, None,
                   max(np.max(np.abs(value - expected[0])), np.max(np.abs(slope_a - expected[1]))),
                   1e-10, "phi, phi' at 0, varpi/2, varpi")

        pts_curve = clover.sample_curve(m, principal_only=False, samples=361)
        resid = max(abs(p.radius ** (m / 2) - math.cos(m * p.angle / 2)) for p in pts_curve)
        yield _row("clover.curve_equation", m, None, resid, 1e-12)
        expected_leaves = m if m % 2 else m // 2
        yield _row("clover.leaf_count", m, None,
                   abs(clover.leaf_count(m) - expected_leaves)
                   + abs(len({p.leaf for p in pts_curve}) - expected_leaves), 0.0)
        if m == 2:
            circle = max(abs((p.x - 0.5) ** 2 + p.y ** 2 - 0.25) for p in pts_curve)
            yield _row("clover.circle", 2, None, circle, 1e-12, "(x - 1/2)^2 + y^2 = 1/4")


# -- moments ------------------------------------------------------------------

def check_moments(ms, ns, tol) -> Iterator[CheckRow]:
    for m in ms:
        top = max(ns) + m + 1
        values = [moments.moment_quadrature(m, j).value for j in range(top + 1)]
        yield _row("moments.positivity", m, None, max(0.0, -min(values)), 0.0,
                   passed=min(values) > 0.0)
        rises = max(b - a for a, b in zip(values, values[1:]))
        yield _row("moments.monotonic", m, None, max(0.0, rises), 1e-12)
        total = clover.varpi(m)
        table2 = max(abs(values[0] - total), abs(values[m - 1] - 4.0 / m),
                     abs(values[m] - 2.0 * total / (m + 2)))
        yield _row("moments.table2", m, None, table2, 1e-10)
        for n in ns:
            ratio = values[n + m] / values[n]
            yield _row("moments.recurrence", m, n,
                       abs(ratio - float(moments.recurrence_ratio(m, n))), tol)
            sq = moments.SqueezeDiagnostic(m, n, values[n + 1] / values[n],
                                           moments.recurrence_ratio(m, n))
            overshoot = max(0.0, float(sq.lower_bound) - sq.ratio_n1_n, sq.ratio_n1_n - 1.0)
            yield _row("moments.squeeze", m, n, overshoot, tol)
            if n < 1:
                continue
            for which in moments.Which:
                closed = moments.moment_closed_form(m, n, which)
                telescoped = moments.telescoped_coefficient(m, n, which)
                yield _row(f"moments.closed_form_exact.{which.value}", m, n,
                           abs(closed.coefficient - telescoped), 0.0)
                if closed.index <= moments.MAX_QUADRATURE_INDEX:
                    quad = moments.moment_quadrature(m, closed.index).value
                    yield _row(f"moments.closed_form_numeric.{which.value}", m, n,
                               abs(closed.value() - quad), 1e-10)
    if 2 in ms:
        pi = math.pi
        classical = [(2, pi / 2), (3, 4.0 / 3.0), (4, 3 * pi / 8)]
        resid = max(abs(moments.moment_quadrature(2, n).value - v) for n, v in classical)
        yield _row("moments.classical_sine_powers", 2, None, resid, 1e-10)


# -- Wallis product -----------------------------------------------------------

def check_wallis(ms, ns) -> Iterator[CheckRow]:
    for m in ms:
        for n in ns:
            if n < 1:
                continue
            diff = wallis.limit_formula(m, n) - wallis.partial_product(m, n - 1).exact
            yield _row("wallis.index_identity", m, n, abs(diff), 0.0)
        truth = clover.varpi(m)
        values = wallis.partial_products_at(m, range(0, 1001))
        decreasing = all(b < a for a, b in zip(values, values[1:]))
        yield _row("wallis.monotone", m, None, max(0.0, truth - 1e-12 - values[-1]), 0.0,
                   "strictly decreasing, above varpi", passed=decreasing and values[-1] > truth - 1e-12)
        rows = wallis.convergence_report(m, [1000, 10000, 100000])
        scaled = [r.N_error for r in rows]
        spread = (max(scaled) - min(scaled)) / min(scaled)
        yield _row("wallis.first_order", m, None, spread, 0.2, "N * error at N = 1e3, 1e4, 1e5",
                   passed=spread < 0.2 and all(r.error > 0 for r in rows))
    if 2 in ms:
        bad = sum(
            wallis.product_term(2, n) != Fraction(2 * n * (2 * n + 2), (2 * n + 1) ** 2)
            for n in range(1, 1001)
        )
        yield _row("wallis.classical_factor", 2, None, bad, 0.0, "n <= 1000")


def run_verification(m_values: Iterable[int] = DEFAULT_M, n_values: Iterable[int] = DEFAULT_N,
                     tol: float = 1e-9) -> list[CheckRow]:
    """Run every check over the ranges; rows sorted by identity, then m, then n."""
    ms = sorted({int(m) for m in m_values})
    ns = sorted({int(n) for n in n_values})
    if not ms or not ns:
        raise ValueError("m and n ranges must be nonempty")
    if ms[0] < 1 or ns[0] < 0:
        raise ValueError("need m >= 1 and n >= 0")
    rows: list[CheckRow] = []
    rows.extend(check_cong_gamma(ms, ns))
    rows.extend(check_constants(ms, tol))
    rows.extend(check_clover(ms))
    rows.extend(check_moments(ms, ns, tol))
    rows.extend(check_wallis(ms, ns))
    return sorted(rows, key=CheckRow.sort_key)
