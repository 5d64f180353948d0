"""Existence tests and obstructions for Kahler-Einstein metrics.

All quantities are exact rationals. Inequality tests report three outcomes:
``consistent``, ``obstructed`` and ``boundary`` (equality), so that callers
decide how to treat the equality case.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional

from .polytope import FanoPolytope, barycenter, dual


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    OBSTRUCTED = "obstructed"
    BOUNDARY = "boundary"

    def __str__(self) -> str:
        return self.value


def _compare(lhs: Fraction, rhs: Fraction) -> Verdict:
    if lhs > rhs:
        return Verdict.OBSTRUCTED
    if lhs == rhs:
        return Verdict.BOUNDARY
    return Verdict.CONSISTENT


@dataclass(frozen=True)
class KEVerdict:
    ke_toric: bool
    soliton_only: bool
    notes: tuple = ()


@dataclass(frozen=True)
class ObstructionInput:
    """Data entering the conical volume obstruction at one singular point.

    ``volume_ratio`` is Vol(link) / Vol(round S^{2n-1}), in (0, 1].
    """

    n: int
    degree: Fraction
    volume_ratio: Fraction
    gorenstein_index: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.volume_ratio <= 1:
            raise ValueError(f"volume ratio {self.volume_ratio} outside (0, 1]")
        if self.degree <= 0:
            raise ValueError("degree must be positive")
        if self.n < 1:
            raise ValueError("dimension must be positive")


def ke_toric_test(P: FanoPolytope) -> KEVerdict:
    bar = barycenter(dual(P))
    zero = all(x == 0 for x in bar)
    if zero:
        return KEVerdict(True, False, ("barycenter of the moment polytope is 0",))
    pretty = "(" + ", ".join(str(x) for x in bar) + ")"
    return KEVerdict(False, True, (f"barycenter {pretty} != 0: Kahler-Ricci soliton only",))


def bishop_gromov_surface(gamma_max: int, degree) -> Verdict:
    """Surface bound |Gamma_max| * deg < 12 for KE log del Pezzo surfaces."""
    if gamma_max < 1 or degree <= 0:
        raise ValueError("need gamma_max >= 1 and positive degree")
    return _compare(gamma_max * Fraction(degree), Fraction(12))


def obstruction_rhs(n: int) -> Fraction:
    """n! (2n-1)^n Vol(S^{2n}) / (2 pi)^n, with the pi factors cancelled.

    Vol(S^{2n}) = 2^{n+1} pi^n n! / (2n)!, which leaves
    2^{n+1} (n!)^2 (2n-1)^n / (2n)!.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(2 ** (n + 1) * factorial(n) ** 2 * (2 * n - 1) ** n, factorial(2 * n))


def conical_lhs(data: ObstructionInput) -> Fraction:
    return Fraction(data.degree) / Fraction(data.volume_ratio)


def conical_obstruction(data: ObstructionInput) -> Verdict:
    return _compare(conical_lhs(data), obstruction_rhs(data.n))


def quasi_regular_ratio(n: int, index, c1_power) -> Fraction:
    """Vol(link)/Vol(S^{2n-1}) = ind(Z) * c1(Z)^{n-1} / n^n for a quasi-regular cone.

    ``index`` may be rational for orbifold quotients Z.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    index, c1_power = Fraction(index), Fraction(c1_power)
    if index <= 0 or c1_power <= 0:
        raise ValueError("index and c1 power must be positive")
    return index * c1_power / n ** n


def node_ratio(n: int) -> Fraction:
    """Ratio for the ordinary double point: the link quotient is a quadric."""
    return quasi_regular_ratio(n, n - 1, 2 * (n - 1) ** (n - 1))


def bishop_degree_bound(n: int, index, degree) -> Verdict:
    """deg(X) <= (n+1)^{n+1} / ind(X) for quotients of Sasaki-Einstein links."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _compare(Fraction(degree), Fraction((n + 1) ** (n + 1)) / Fraction(index))


def hilbert_polynomial(n: int, degree, k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be nonnegative")
    degree = Fraction(degree)
    if n == 2:
        return Fraction(k * (k + 1), 2) * degree + 1
    if n == 3:
        return (Fraction(k ** 3, 6) + Fraction(k ** 2, 4) + Fraction(k, 12)) * degree + 2 * k + 1
    raise ValueError("Hilbert polynomial only for n = 2 or 3")


def virtual_dim(n: int, degree, rho: Optional[int] = None, b3: Optional[int] = None) -> Fraction:
    degree = Fraction(degree)
    if n == 2:
        return 10 - 2 * degree
    if n == 3:
        if rho is None or b3 is None:
            raise ValueError("threefolds need rho and b3")
        return 18 - rho + (b3 - degree) / 2
    raise ValueError("virtual dimension only for n = 2 or 3")
