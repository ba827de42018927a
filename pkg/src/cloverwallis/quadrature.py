"""Tanh-sinh quadrature for integrands with endpoint singularities.

The rule maps ``[lower, upper]`` through ``s = (1 + tanh(pi/2 sinh t)) / 2`` and
applies the trapezoid rule in ``t``, halving the step each level.  Nodes
cluster double-exponentially at both ends, which absorbs singularities such
as ``(1 - t) ** -0.5`` without subdivision.

Integrands are vectorized: they receive a 1-d array of abscissas and return
an array whose last axis matches it.  Extra leading axes are a batch of
independent integrals sharing the same nodes.

Near a singular endpoint the abscissa itself loses the information needed
to evaluate the integrand (``1 - t`` rounds to zero well before the weights
become negligible).  With ``gaps=True`` the integrand is called as
``f(t, left, right)`` where ``left = t - lower`` and ``right = upper - t`` are
computed directly from the transform, without cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "NonConvergenceError",
    "NonFiniteSampleError",
    "QuadratureError",
    "QuadratureResult",
    "Tolerance",
    "integrate_singular",
]

# Largest |t|; at t = 6 the endpoint gap is about 1e-275, still a normal float.
_T_MAX = 6.0
_EPS = np.finfo(float).eps


class QuadratureError(ArithmeticError):
    pass


class NonConvergenceError(QuadratureError):
    """Raised when ``max_levels`` is exhausted; ``result`` holds the last estimate."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class NonFiniteSampleError(QuadratureError):
    pass


@dataclass(frozen=True)
class Tolerance:
    absolute: float = 1e-13
    max_levels: int = 12

    def __post_init__(self):
        if not 1e-15 <= self.absolute <= 1e-3:
            raise ValueError(f"absolute tolerance {self.absolute!r} outside [1e-15, 1e-3]")
        if self.max_levels < 2:
            raise ValueError("max_levels must be >= 2")


@dataclass(frozen=True)
class QuadratureResult:
    """Integral estimate.

    ``value`` is a float, or an ndarray for batched integrands.  ``evaluations``
    counts abscissas visited (per batch member).
    """

    value: float | np.ndarray
    error_estimate: float
    evaluations: int


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    """New nodes added at ``level`` as read-only arrays ``(left, right, weight)``.

    ``left`` and ``right`` are the unit-interval distances to 0 and 1; ``weight``
    is ``ds/dt`` (the step ``h`` is applied by the caller).
    """
    if level == 0:
        t = np.arange(-_T_MAX, _T_MAX + 0.5, 1.0)
    else:
        h = 2.0 ** -level
        k = np.arange(1, int(_T_MAX / h) + 1, 2)
        half = k * h
        t = np.concatenate([-half[::-1], half])
    u = 0.5 * math.pi * np.sinh(t)
    left = 1.0 / (1.0 + np.exp(-2.0 * u))
    right = 1.0 / (1.0 + np.exp(2.0 * u))
    weight = 0.25 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    for arr in (left, right, weight):
        arr.setflags(write=False)
    return left, right, weight


def _sample(integrand, lower, width, left, right, weight, gaps):
    t = np.where(left < 0.5, lower + width * left, (lower + width) - width * right)
    if not gaps:
        # Abscissas that round onto an endpoint are dropped, never evaluated there.
        keep = (t > lower) & (t < lower + width)
        if not np.all(keep):
            t, left, right, weight = t[keep], left[keep], right[keep], weight[keep]
    if gaps:
        values = integrand(t, width * left, width * right)
    else:
        values = integrand(t)
    values = np.asarray(values, dtype=float)
    if values.ndim == 0 or values.shape[-1] != t.shape[0]:
        values = np.broadcast_to(values, np.broadcast_shapes(values.shape, t.shape))
    if not np.all(np.isfinite(values)):
        bad = t[~np.all(np.isfinite(values.reshape(-1, t.shape[0])), axis=0)]
        raise NonFiniteSampleError(f"integrand is not finite at t = {bad[:3].tolist()}")
    return values, weight


def integrate_singular(
    integrand: Callable[..., np.ndarray],
    lower: float,
    upper: float,
    tol: Tolerance | None = None,
    *,
    gaps: bool = False,
) -> QuadratureResult:
    """Integrate ``integrand`` over ``[lower, upper]`` by tanh-sinh.

    Levels are added until two consecutive estimates differ by at most
    ``tol.absolute``; that difference is reported as ``error_estimate``
    (floored at a few ulps of the integral's magnitude).

    Raises
    ------
    NonConvergenceError
        ``tol.max_levels`` reached with the difference still above tolerance.
    NonFiniteSampleError
        The integrand returned inf or nan at some abscissa.
    """
    tol = tol or Tolerance()
    lower = float(lower)
    upper = float(upper)
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise ValueError("integration limits must be finite")
    if not lower < upper:
        raise ValueError(f"need lower < upper, got [{lower}, {upper}]")
    width = upper - lower

    raw = None
    magnitude = None
    previous = None
    evaluations = 0
    diff = math.inf
    for level in range(tol.max_levels + 1):
        left, right, weight = _level_nodes(level)
        values, weight = _sample(integrand, lower, width, left, right, weight, gaps)
        evaluations += left.shape[0]
        contrib = np.sum(values * weight, axis=-1)
        abs_contrib = np.sum(np.abs(values) * weight, axis=-1)
        raw = contrib if raw is None else raw + contrib
        magnitude = abs_contrib if magnitude is None else magnitude + abs_contrib
        estimate = width * raw * 2.0 ** -level
        if previous is not None:
            diff = float(np.max(np.abs(estimate - previous)))
            if level >= 2 and diff <= tol.absolute:
                break
        previous = estimate
    floor = 8.0 * _EPS * float(np.max(width * magnitude * 2.0 ** -level))
    value = float(estimate) if np.ndim(estimate) == 0 else estimate
    result = QuadratureResult(value, float(max(diff, floor)), evaluations)
    if diff > tol.absolute:
        raise NonConvergenceError(
            f"tanh-sinh did not converge in {tol.max_levels} levels "
            f"(last difference {diff:.3e} > {tol.absolute:.1e})",
            result,
        )
    return result
