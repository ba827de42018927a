"""Congruence Gamma function.

``cong_gamma(m, n, k)`` is the product ``k * (m + k) * (2m + k) * ... * (m(n-1) + k)``,
i.e. the members of the class ``k mod m`` up to ``mn``, with the conventions
``Γ_m(0, k) = 1`` and ``Γ_m(1, 0) = 1``.  For ``m = 1`` it reduces to
``(n - 1)!``.

Exact values are Python integers.  The real-Gamma closed form is evaluated
with mpmath at 30 significant digits so it never shares code with the
integer recursion it is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

__all__ = [
    "CongGammaArgs",
    "cong_gamma",
    "cong_gamma_closed_form",
    "printed_closed_form",
    "real_gamma",
]

_DPS = 30


@dataclass(frozen=True)
class CongGammaArgs:
    """Arguments ``(modulus, count, residue)`` of ``Γ_modulus(count, residue)``.

    With ``strict=False`` the residue may be any non-negative integer; the
    recursion is still well defined and the moment formulas need residues
    such as ``m + 2`` against modulus ``2m`` for ``m <= 2``.
    """

    modulus: int
    count: int
    residue: int
    strict: bool = True

    def __post_init__(self):
        for name in ("modulus", "count", "residue"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int, got {value!r}")
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")
        if self.residue < 0:
            raise ValueError(f"residue must be >= 0, got {self.residue}")
        if self.strict and self.residue >= self.modulus:
            raise ValueError(
                f"residue {self.residue} must be < modulus {self.modulus}"
            )


def _coerce(args, n, k, strict) -> CongGammaArgs:
    if isinstance(args, CongGammaArgs):
        return args
    return CongGammaArgs(args, n, k, strict)


def cong_gamma(m, n=None, k=None, *, strict: bool = True) -> int:
    """Exact value of ``Γ_m(n, k)`` by its defining recursion.

    Accepts either a :class:`CongGammaArgs` or the three integers.

    >>> cong_gamma(2, 3, 1)
    15
    >>> cong_gamma(1, 4, 0)
    6
    """
    a = _coerce(m, n, k, strict)
    if a.count == 0:
        return 1
    # Γ(1, 0) = 1 is a separate base case; a bare recursion from Γ(0, 0) would give 0.
    value = 1
    start = 1 if a.residue == 0 else 0
    for j in range(start, a.count):
        value *= a.modulus * j + a.residue
    return value


def real_gamma(x) -> mpmath.mpf:
    """Real Gamma function at 30 significant digits."""
    with mpmath.workdps(_DPS):
        return mpmath.gamma(mpmath.mpf(x))


def cong_gamma_closed_form(m, n=None, k=None, *, strict: bool = True) -> mpmath.mpf:
    """``m**n * Γ(n + k/m) / Γ(k/m)`` as a 30-digit mpmath real.

    Only defined for ``k >= 1`` since ``Γ(0)`` is a pole.
    """
    a = _coerce(m, n, k, strict)
    if a.residue == 0:
        raise ValueError("closed form is undefined for residue 0 (Gamma pole at 0)")
    with mpmath.workdps(_DPS):
        ratio = mpmath.mpf(a.residue) / a.modulus
        return mpmath.mpf(a.modulus) ** a.count * real_gamma(a.count + ratio) / real_gamma(ratio)


def printed_closed_form(m, n=None, k=None) -> mpmath.mpf:
    """``Γ(n + k/m) / (m**n Γ(k/m))``.

    Kept only to demonstrate that this arrangement disagrees with the
    recursion, e.g. it gives 1/4 at ``(m, n, k) = (2, 1, 1)`` where the
    recursion gives 1.
    """
    a = _coerce(m, n, k, True)
    if a.residue == 0:
        raise ValueError("closed form is undefined for residue 0 (Gamma pole at 0)")
    with mpmath.workdps(_DPS):
        ratio = mpmath.mpf(a.residue) / a.modulus
        return real_gamma(a.count + ratio) / (mpmath.mpf(a.modulus) ** a.count * real_gamma(ratio))
