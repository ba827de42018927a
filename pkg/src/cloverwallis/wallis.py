"""The generalized Wallis product for the clover constant.

    varpi_m = 2(m+2)/m * prod_{n>=1} 2n(2mn + m + 2) / ((2n + 1)(2mn + 2))

Each factor is ``1 - 2/D`` with ``D = (2n+1)(2mn+2)``, so partial products
decrease monotonically to ``varpi_m`` with error ``~ C/N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clover import check_index, varpi
from .congruence_gamma import cong_gamma

__all__ = [
    "ConvergenceRow",
    "EXACT_LIMIT",
    "PartialProduct",
    "TermBudgetExceeded",
    "VarpiEstimate",
    "aitken",
    "convergence_report",
    "estimate_varpi",
    "limit_formula",
    "partial_product",
    "partial_products_at",
    "prefactor",
    "product_term",
]

EXACT_LIMIT = 10**4
MAX_TERMS = 10**8
_START_TERMS = 16


class TermBudgetExceeded(RuntimeError):
    pass


def _check_count(n, minimum, name="n") -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"{name} must be an int, got {n!r}")
    if n < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {n}")
    return int(n)


def prefactor(m) -> Fraction:
    m = check_index(m)
    return Fraction(2 * (m + 2), m)


def _term_parts(m: int, n: int) -> tuple[int, int]:
    return 2 * n * (2 * m * n + m + 2), (2 * n + 1) * (2 * m * n + 2)


def product_term(m, n) -> Fraction:
    """The ``n``-th factor ``2n(2mn + m + 2) / ((2n + 1)(2mn + 2))``, exactly."""
    m = check_index(m)
    n = _check_count(n, 1)
    return Fraction(*_term_parts(m, n))


@dataclass(frozen=True)
class PartialProduct:
    """Prefactor times the first ``terms`` factors.

    ``exact`` is the reduced fraction after ``exact_terms`` factors, which
    equals ``terms`` up to :data:`EXACT_LIMIT` and is capped there beyond it.
    ``approx`` always covers all ``terms`` factors.
    """

    m: int
    terms: int
    exact: Fraction | None
    approx: float
    exact_terms: int | None


def _float_product(m: int, start: int, stop: int, value: float) -> float:
    # Fixed left-to-right order keeps results bit-reproducible.
    for n in range(start, stop + 1):
        num, den = _term_parts(m, n)
        value *= num / den
    return value


def partial_product(m, N, *, exact: bool = True) -> PartialProduct:
    """Partial product with ``N`` factors."""
    m = check_index(m)
    N = _check_count(N, 0, "N")
    approx = _float_product(m, 1, N, 2.0 * (m + 2) / m)
    if not exact:
        return PartialProduct(m, N, None, approx, None)
    checkpoint = min(N, EXACT_LIMIT)
    num, den = 2 * (m + 2), m
    for n in range(1, checkpoint + 1):
        a, b = _term_parts(m, n)
        num *= a
        den *= b
    return PartialProduct(m, N, Fraction(num, den), approx, checkpoint)


def partial_products_at(m, checkpoints) -> list[float]:
    """Floating partial products at each of the ascending ``checkpoints`` in one pass."""
    m = check_index(m)
    out = []
    value, done = 2.0 * (m + 2) / m, 0
    for N in checkpoints:
        N = _check_count(N, 0, "N")
        if N < done:
            raise ValueError("checkpoints must be ascending")
        value = _float_product(m, done + 1, N, value)
        done = N
        out.append(value)
    return out


def limit_formula(m, n) -> Fraction:
    """``(4/m) Γ_2(n,0) Γ_{2m}(n,m+2) / (Γ_2(n,1) Γ_{2m}(n,2))``, exactly.

    Equals ``partial_product(m, n - 1).exact``.
    """
    m = check_index(m)
    n = _check_count(n, 1)
    num = 4 * cong_gamma(2, n, 0) * cong_gamma(2 * m, n, m + 2, strict=False)
    den = m * cong_gamma(2, n, 1) * cong_gamma(2 * m, n, 2, strict=False)
    return Fraction(num, den)


def aitken(seq):
    """One sweep of Aitken's delta-squared process over ``seq``.

    Returns ``len(seq) - 2`` values; a zero second difference passes the
    middle value through unchanged.
    """
    out = []
    for a, b, c in zip(seq, seq[1:], seq[2:]):
        denom = (c - b) - (b - a)
        out.append(c if denom == 0.0 else c - (c - b) ** 2 / denom)
    return out


@dataclass(frozen=True)
class VarpiEstimate:
    value: float
    terms_used: int
    accelerated: bool
    error_estimate: float


def estimate_varpi(m, target: float = 1e-9, *, accelerate: bool = True,
                   max_terms: int = MAX_TERMS) -> VarpiEstimate:
    """Estimate ``varpi_m`` from the product to within about ``target``.

    Partial products are taken at doubling term counts ``N = 16, 32, 64, ...``.
    Without acceleration the error of ``P_{2N}`` is modelled as ``C/(2N)``
    with ``C`` fitted from ``P_N - P_{2N}``.  On the doubling subsequence the
    leading ``C/N`` error shrinks geometrically, so repeated Aitken sweeps
    remove successive powers of ``1/N``; the stopping rule compares the
    two newest entries of the deepest sweep.
    """
    m = check_index(m)
    if not target >= 1e-10:
        raise ValueError(f"target must be >= 1e-10, got {target!r}")
    value = 2.0 * (m + 2) / m
    N = 0
    rows: list[list[float]] = [[]]
    previous = None
    while True:
        nxt = _START_TERMS if N == 0 else 2 * N
        if nxt > max_terms:
            raise TermBudgetExceeded(
                f"product estimate for m={m} did not reach {target:g} within {max_terms} terms"
            )
        value = _float_product(m, N + 1, nxt, value)
        N = nxt
        if not accelerate:
            if previous is not None:
                # P_prev - P_N ~ C/(2N) ~ remaining error of P_N
                predicted = previous - value
                if predicted <= target:
                    return VarpiEstimate(value, N, False, predicted)
            previous = value
            continue
        rows[0].append(value)
        depth = 0
        while len(rows[depth]) >= 3:
            if len(rows) == depth + 1:
                rows.append([])
            src = rows[depth]
            rows[depth + 1] = aitken(src)
            depth += 1
        usable = [row for row in rows[1:] if len(row) >= 2]
        if usable:
            deepest = usable[-1]
            change = abs(deepest[-1] - deepest[-2])
            if change <= target:
                return VarpiEstimate(deepest[-1], N, True, change)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    P_N: float
    error: float
    N_error: float


def convergence_report(m, checkpoints) -> list[ConvergenceRow]:
    """Error of the partial products against the quadrature value of ``varpi_m``."""
    m = check_index(m)
    checkpoints = [int(c) for c in checkpoints]
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    truth = varpi(m)
    rows = []
    for N, value in zip(checkpoints, partial_products_at(m, checkpoints)):
        err = value - truth
        rows.append(ConvergenceRow(N, value, err, N * err))
    return rows
