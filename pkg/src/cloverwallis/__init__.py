"""Clover constants, the m-clover function and a generalized Wallis product.

The m-clover is the polar curve ``r**(m/2) = cos(m*theta/2)``; its principal
leaf has length ``varpi(m)`` (``varpi(2) = pi``, ``varpi(4)`` the lemniscate
constant).  The clover function ``phi_m`` inverts arc length along the leaf
and plays the part of ``sin`` in a Wallis-type product for ``varpi(m)``.
"""

from .clover import (
    CloverPoint,
    arc_length,
    clover_fn,
    clover_fn_and_derivative,
    clover_fn_derivative,
    leaf_count,
    sample_curve,
    varpi,
    varpi_beta_oracle,
)
from .congruence_gamma import CongGammaArgs, cong_gamma, cong_gamma_closed_form
from .moments import (
    moment_by_recurrence,
    moment_closed_form,
    moment_quadrature,
    recurrence_ratio,
    squeeze_diagnostic,
)
from .quadrature import QuadratureResult, Tolerance, integrate_singular
from .verification import run_verification
from .wallis import (
    convergence_report,
    estimate_varpi,
    limit_formula,
    partial_product,
    product_term,
)

__version__ = "0.1.0"

__all__ = [
    "CloverPoint",
    "CongGammaArgs",
    "QuadratureResult",
    "Tolerance",
    "arc_length",
    "clover_fn",
    "clover_fn_and_derivative",
    "clover_fn_derivative",
    "cong_gamma",
    "cong_gamma_closed_form",
    "convergence_report",
    "estimate_varpi",
    "integrate_singular",
    "leaf_count",
    "limit_formula",
    "moment_by_recurrence",
    "moment_closed_form",
    "moment_quadrature",
    "partial_product",
    "product_term",
    "recurrence_ratio",
    "run_verification",
    "sample_curve",
    "squeeze_diagnostic",
    "varpi",
    "varpi_beta_oracle",
]
