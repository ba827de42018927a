"""Moments ``I_m(n) = int_0^varpi phi_m(x)**n dx`` of the clover function.

By the symmetry ``phi_m(varpi - x) = phi_m(x)`` and the substitution
``t = phi_m(x)`` (so ``dx = dt / sqrt(1 - t**m)``) each moment reduces to the
one-dimensional integral ``2 int_0^1 t**n / sqrt(1 - t**m) dt``, which is
what :func:`moment_quadrature` evaluates.

Three routes are offered:

* quadrature of the reduced integral;
* the ratio ``I_m(n + m) / I_m(n) = 2(n+1) / (2(n+1) + m)`` applied to a seed;
* exact closed forms at the indices ``mn`` and ``mn - 1``, returned as a
  rational coefficient of either ``varpi_m`` or ``4/m``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clover import check_index, varpi
from .congruence_gamma import cong_gamma
from .quadrature import integrate_singular

__all__ = [
    "Basis",
    "ClosedFormCoefficient",
    "MAX_QUADRATURE_INDEX",
    "MomentRangeError",
    "MomentValue",
    "Route",
    "SqueezeDiagnostic",
    "Which",
    "moment_by_recurrence",
    "moment_closed_form",
    "moment_quadrature",
    "recurrence_ratio",
    "squeeze_diagnostic",
    "telescoped_coefficient",
]

MAX_QUADRATURE_INDEX = 200


class MomentRangeError(ValueError):
    """Quadrature refused for an index above :data:`MAX_QUADRATURE_INDEX`."""


class Route(str, enum.Enum):
    QUADRATURE = "quadrature"
    RECURRENCE = "recurrence"
    CLOSED_FORM = "closed_form"


class Basis(str, enum.Enum):
    VARPI = "varpi_m"
    FOUR_OVER_M = "four_over_m"


class Which(str, enum.Enum):
    AT_MN = "at_mn"
    AT_MN_MINUS_1 = "at_mn_minus_1"


@dataclass(frozen=True)
class MomentValue:
    m: int
    n: int
    value: float
    route: Route

    def __post_init__(self):
        if not self.value > 0.0:
            raise ArithmeticError(f"moment I_{self.m}({self.n}) = {self.value} is not positive")


@dataclass(frozen=True)
class ClosedFormCoefficient:
    """Exact prefactor of ``basis``; the moment equals ``coefficient * basis(m)``."""

    m: int
    index: int
    coefficient: Fraction
    basis: Basis

    def basis_value(self) -> float:
        if self.basis is Basis.VARPI:
            return varpi(self.m)
        return 4.0 / self.m

    def value(self) -> float:
        return float(self.coefficient) * self.basis_value()


@dataclass(frozen=True)
class SqueezeDiagnostic:
    m: int
    n: int
    ratio_n1_n: float
    lower_bound: Fraction

    def holds(self, slack: float = 1e-9) -> bool:
        return float(self.lower_bound) - slack <= self.ratio_n1_n <= 1.0 + slack


def _check_n(n, minimum=0) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"moment index must be an int, got {n!r}")
    if n < minimum:
        raise ValueError(f"moment index must be >= {minimum}, got {n}")
    return int(n)


def _reduced_integral(m: int, n: int) -> float:
    def integrand(t, left, right):
        with np.errstate(divide="ignore"):
            log_t = np.where(left < 0.5, np.log(left), np.log1p(-right))
        return 2.0 * np.exp(n * log_t) / np.sqrt(-np.expm1(m * log_t))

    return integrate_singular(integrand, 0.0, 1.0, gaps=True).value


def moment_quadrature(m, n) -> MomentValue:
    """``I_m(n)`` by tanh-sinh quadrature of the reduced integral."""
    m = check_index(m)
    n = _check_n(n)
    if n > MAX_QUADRATURE_INDEX:
        raise MomentRangeError(
            f"quadrature is refused for n > {MAX_QUADRATURE_INDEX}; "
            "use moment_closed_form at n = 0 or -1 mod m"
        )
    return MomentValue(m, n, _reduced_integral(m, n), Route.QUADRATURE)


def recurrence_ratio(m, n) -> Fraction:
    """Exact ratio ``I_m(n + m) / I_m(n) = 2(n+1) / (2(n+1) + m)``."""
    m = check_index(m)
    n = _check_n(n)
    return Fraction(2 * (n + 1), 2 * (n + 1) + m)


def moment_closed_form(m, n, which=Which.AT_MN) -> ClosedFormCoefficient:
    """Exact coefficient for ``I_m(mn)`` (basis varpi) or ``I_m(mn - 1)`` (basis 4/m).

    ``I_m(mn) = Γ_{2m}(n, 2) / Γ_{2m}(n, m + 2) * varpi_m`` and
    ``I_m(mn - 1) = Γ_2(n, 0) / Γ_2(n, 1) * 4/m``.
    """
    m = check_index(m)
    n = _check_n(n, minimum=1)
    which = Which(which)
    if which is Which.AT_MN:
        # residue m + 2 reaches the modulus 2m when m <= 2; the recursion still applies
        coefficient = Fraction(
            cong_gamma(2 * m, n, 2, strict=False),
            cong_gamma(2 * m, n, m + 2, strict=False),
        )
        return ClosedFormCoefficient(m, m * n, coefficient, Basis.VARPI)
    coefficient = Fraction(cong_gamma(2, n, 0), cong_gamma(2, n, 1))
    return ClosedFormCoefficient(m, m * n - 1, coefficient, Basis.FOUR_OVER_M)


def telescoped_coefficient(m, n, which=Which.AT_MN) -> Fraction:
    """The same coefficient as :func:`moment_closed_form`, built by chaining
    :func:`recurrence_ratio` from the seeds ``I_m(0) = varpi`` and ``I_m(m-1) = 4/m``.
    """
    m = check_index(m)
    n = _check_n(n, minimum=1)
    which = Which(which)
    coefficient = Fraction(1)
    if which is Which.AT_MN:
        for j in range(n):
            coefficient *= recurrence_ratio(m, m * j)
    else:
        for j in range(1, n):
            coefficient *= recurrence_ratio(m, m * j - 1)
    return coefficient


def moment_by_recurrence(m, n) -> MomentValue:
    """``I_m(n)`` by stepping the recurrence up from the seed at ``n mod m``.

    Seeds at residues 0 and ``m - 1`` are exact (``varpi`` and ``4/m``); any other
    residue is seeded by quadrature.
    """
    m = check_index(m)
    n = _check_n(n)
    base = n % m
    if base == 0:
        value = varpi(m)
    elif base == m - 1:
        value = 4.0 / m
    else:
        value = _reduced_integral(m, base)
    factor = Fraction(1)
    for j in range(base, n, m):
        factor *= recurrence_ratio(m, j)
    return MomentValue(m, n, float(factor) * value, Route.RECURRENCE)


def squeeze_diagnostic(m, n) -> SqueezeDiagnostic:
    """``I_m(n+1) / I_m(n)`` by quadrature together with its exact lower bound.

    The bound ``2(n+1) / (2(n+1) + m)`` is :func:`recurrence_ratio`.
    """
    m = check_index(m)
    n = _check_n(n)
    ratio = moment_quadrature(m, n + 1).value / moment_quadrature(m, n).value
    return SqueezeDiagnostic(m, n, ratio, recurrence_ratio(m, n))
