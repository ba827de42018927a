"""Geometry of the m-clover ``r**(m/2) = cos(m*theta/2)``.

Arc length along the principal leaf, the clover constant ``varpi(m)`` (the
leaf's total length), the clover function ``phi_m`` inverting the arc
length, and sampling of the curve itself.

``phi_m`` is found by Newton iteration inside a bracket, on the variable
``v = sqrt(1 - r)``.  In ``v`` the arc length is smooth with slope
``-2/sqrt(m)`` at the leaf's tip, so the flat spot of ``l_m^{-1}`` at ``r = 1``
never reaches the root-finder, and ``1 - r**m`` is available without
cancellation for the derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .congruence_gamma import real_gamma
from .quadrature import Tolerance, integrate_singular

__all__ = [
    "CloverPoint",
    "RootBracketError",
    "arc_length",
    "clover_fn",
    "clover_fn_and_derivative",
    "clover_fn_derivative",
    "leaf_count",
    "sample_curve",
    "varpi",
    "varpi_beta_oracle",
]

ROOT_RESIDUAL = 1e-13
_NEWTON_STOP = 1e-14
_MAX_NEWTON = 60
_CHUNK = 2048


class RootBracketError(ArithmeticError):
    """The inversion of the arc length failed to reach its residual target."""


def check_index(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"clover index must be an int, got {m!r}")
    if m < 1:
        raise ValueError(f"clover index must be >= 1, got {m}")
    return int(m)


def _one_minus_pow(m, log_t):
    """``1 - t**m`` given ``log t``, accurate as ``t -> 1``."""
    return -np.expm1(m * log_t)


def _arc_length_q(m: int, q: np.ndarray, tol: Tolerance | None = None) -> np.ndarray:
    """``l_m(1 - q)`` for an array of complements ``q = 1 - r``.

    Substituting ``t = r s`` puts every upper limit on the same unit interval,
    so the whole array is integrated in one batched call.
    """
    q = np.atleast_1d(np.asarray(q, dtype=float))
    r = 1.0 - q
    out = np.zeros_like(r)
    live = r > 0.0
    if not np.any(live):
        return out
    rl = r[live][:, None]
    log_r = np.log1p(-q[live])[:, None]

    def integrand(s, left, right):
        with np.errstate(divide="ignore"):
            log_s = np.where(left < 0.5, np.log(left), np.log1p(-right))
        return rl / np.sqrt(_one_minus_pow(m, log_r + log_s))

    out[live] = integrate_singular(integrand, 0.0, 1.0, tol, gaps=True).value
    return out


def arc_length(m, r, tol: Tolerance | None = None):
    """Arc length ``l_m(r) = int_0^r dt / sqrt(1 - t**m)`` along the principal leaf.

    ``r`` may be a scalar or an array of radii in ``[0, 1]``.
    """
    m = check_index(m)
    arr = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("radius must lie in [0, 1]")
    out = _arc_length_q(m, 1.0 - arr.ravel(), tol).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def _varpi(m: int) -> float:
    return 2.0 * float(_arc_length_q(m, np.zeros(1))[0])


def varpi(m) -> float:
    """The clover constant: total arc length of the principal leaf.

    ``varpi(2) == pi`` and ``varpi(4)`` is the lemniscate constant 2.62205755...
    """
    return _varpi(check_index(m))


def varpi_beta_oracle(m) -> float:
    """``(2/m) B(1/m, 1/2)`` via the real Gamma function, independent of quadrature."""
    m = check_index(m)
    a = 1.0 / m
    return float(2 * real_gamma(a) * real_gamma(0.5) / (m * real_gamma(a + 0.5)))


def _solve_v(m: int, y: np.ndarray, half: float) -> np.ndarray:
    """Solve ``l_m(1 - v**2) = y`` for ``v`` in ``[0, 1]``, elementwise."""
    v = np.empty_like(y)
    at_tip = y >= half
    at_origin = y <= 0.0
    v[at_tip] = 0.0
    v[at_origin] = 1.0
    todo = ~(at_tip | at_origin)
    if not np.any(todo):
        return v
    target = y[todo]
    lo = np.zeros_like(target)
    hi = np.ones_like(target)
    # Linear model at the tip, clipped into the bracket.
    guess = np.clip((half - target) * math.sqrt(m) / 2.0, 0.05, 0.95)
    residual = np.full_like(target, np.inf)
    for _ in range(_MAX_NEWTON):
        q = guess * guess
        residual = _arc_length_q(m, q) - target
        if np.all(np.abs(residual) <= _NEWTON_STOP):
            break
        # Arc length decreases in v.
        lo = np.where(residual > 0.0, guess, lo)
        hi = np.where(residual < 0.0, guess, hi)
        slope = -2.0 * guess / np.sqrt(_one_minus_pow(m, np.log1p(-q)))
        step = residual / slope
        new = guess - step
        outside = ~((new > lo) & (new < hi))
        new = np.where(outside, 0.5 * (lo + hi), new)
        # Converged entries stay put so batch composition cannot nudge them.
        new = np.where(np.abs(residual) <= _NEWTON_STOP, guess, new)
        if np.all(np.abs(new - guess) <= 4 * np.finfo(float).eps):
            guess = new
            residual = _arc_length_q(m, guess * guess) - target
            break
        guess = new
    worst = float(np.max(np.abs(residual)))
    if worst > ROOT_RESIDUAL:
        raise RootBracketError(
            f"arc-length inversion for m={m} left residual {worst:.3e} > {ROOT_RESIDUAL:.0e}"
        )
    v[todo] = guess
    return v


def _fold(m: int, x):
    """Map ``x`` in ``[0, varpi]`` onto ``[0, varpi/2]`` and report the side."""
    total = varpi(m)
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > total):
        raise ValueError(f"arc length must lie in [0, varpi({m})] = [0, {total!r}]")
    half = 0.5 * total
    upper = arr > half
    folded = np.where(upper, total - arr, arr)
    return arr.shape, folded.ravel(), upper.ravel(), half


def _solve(m: int, x):
    shape, y, upper, half = _fold(m, x)
    v = np.empty_like(y)
    for start in range(0, y.size, _CHUNK):
        v[start:start + _CHUNK] = _solve_v(m, y[start:start + _CHUNK], half)
    q = v * v
    return shape, q, upper


def clover_fn(m, x):
    """The m-clover function ``phi_m(x)``: radius at arc distance ``x`` on the principal leaf.

    Defined on ``[0, varpi(m)]`` with ``phi_m(varpi - x) == phi_m(x)``.  Accepts
    scalars or arrays.
    """
    m = check_index(m)
    shape, q, _ = _solve(m, x)
    out = (1.0 - q).reshape(shape)
    return float(out) if out.ndim == 0 else out


def _derivative(m, q, upper):
    # q == 1 is r == 0, where log1p gives -inf and the magnitude is exactly 1.
    with np.errstate(divide="ignore"):
        magnitude = np.sqrt(_one_minus_pow(m, np.log1p(-q)))
    return np.where(upper, -magnitude, magnitude)


def clover_fn_derivative(m, x):
    """``phi_m'(x) = +-sqrt(1 - phi_m(x)**m)``, positive on the rising half."""
    m = check_index(m)
    shape, q, upper = _solve(m, x)
    out = _derivative(m, q, upper).reshape(shape)
    return float(out) if out.ndim == 0 else out


def clover_fn_and_derivative(m, x):
    """``(phi_m(x), phi_m'(x))`` from a single inversion."""
    m = check_index(m)
    shape, q, upper = _solve(m, x)
    value = (1.0 - q).reshape(shape)
    slope = _derivative(m, q, upper).reshape(shape)
    if value.ndim == 0:
        return float(value), float(slope)
    return value, slope


def leaf_count(m) -> int:
    """Number of leaves: ``m`` for odd ``m``, ``m/2`` for even ``m``."""
    m = check_index(m)
    return m if m % 2 else m // 2


@dataclass(frozen=True)
class CloverPoint:
    """A point of the m-clover in polar and cartesian form.

    ``angle`` is chosen so that ``radius**(m/2) == cos(m*angle/2)`` holds
    literally; on the principal leaf it lies in ``[-pi/m, pi/m]``.
    ``arc_length`` is the distance from the origin along the principal leaf
    (counter-clockwise start), filled in only when requested.
    """

    radius: float
    angle: float
    x: float
    y: float
    leaf: int = 0
    arc_length: float | None = None

    @property
    def cartesian(self) -> tuple[float, float]:
        return (self.x, self.y)


def sample_curve(m, principal_only: bool = True, samples: int = 181, *,
                 with_arc_length: bool = False) -> list[CloverPoint]:
    """Sample ``samples`` points per leaf with uniformly spaced polar angle.

    With ``principal_only=False`` the principal leaf is rotated by
    ``2*pi/leaf_count(m)`` to produce every leaf.
    """
    m = check_index(m)
    if samples < 2:
        raise ValueError("need at least 2 samples per leaf")
    theta = np.linspace(-math.pi / m, math.pi / m, samples)
    c = np.clip(np.cos(0.5 * m * theta), 0.0, None)
    radius = c ** (2.0 / m)
    arcs = None
    if with_arc_length:
        lengths = np.asarray(arc_length(m, radius))
        arcs = np.where(theta >= 0.0, lengths, varpi(m) - lengths)
    leaves = 1 if principal_only else leaf_count(m)
    points = []
    for j in range(leaves):
        rotation = 2.0 * math.pi * j / leaves
        # For odd m an odd rotation flips the sign of cos(m*angle/2); shift by 2*pi.
        shift = 2.0 * math.pi if (m % 2 and j % 2) else 0.0
        cos_r, sin_r = math.cos(rotation), math.sin(rotation)
        for i in range(samples):
            px = radius[i] * math.cos(theta[i])
            py = radius[i] * math.sin(theta[i])
            points.append(CloverPoint(
                radius=float(radius[i]),
                angle=float(theta[i] + rotation + shift),
                x=float(cos_r * px - sin_r * py),
                y=float(sin_r * px + cos_r * py),
                leaf=j,
                arc_length=None if arcs is None else float(arcs[i]),
            ))
    return points
