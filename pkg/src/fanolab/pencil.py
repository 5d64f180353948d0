"""GIT stability of pencils of quadrics through their discriminant.

The pencil lambda*A + mu*B of symmetric matrices maps to the binary form
det(lambda*A + mu*B). Verdicts depend only on root multiplicities, which are
read off an exact squarefree decomposition over Q.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import polys


class DegeneratePencil(ValueError):
    """det(lambda*A + mu*B) vanishes identically."""


def _matrix(rows: Sequence[Sequence]) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in M]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return sign * result


@dataclass(frozen=True)
class BinaryForm:
    """sum_i coefficients[i] * lambda^i * mu^(d - i)."""

    degree: int
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if len(coeffs) != self.degree + 1:
            raise ValueError(f"a degree-{self.degree} form needs {self.degree + 1} coefficients")
        if not any(coeffs):
            raise ValueError("the zero form has no stability")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_linear_factors(cls, factors: Sequence[tuple]) -> "BinaryForm":
        """Product of (a*lambda + b*mu) over the given (a, b) pairs."""
        f = BinaryForm(0, (1,))
        for a, b in factors:
            f = f * BinaryForm(1, (b, a))
        return f

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def swap(self) -> "BinaryForm":
        return BinaryForm(self.degree, self.coefficients[::-1])

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(Fraction(c) * x for x in self.coefficients))

    def shear(self, t) -> "BinaryForm":
        """f(lambda + t*mu, mu)."""
        t = Fraction(t)
        out = [Fraction(0)] * (self.degree + 1)
        for i, c in enumerate(self.coefficients):
            # (lambda + t mu)^i mu^(d-i)
            for j, b in enumerate(polys.power([t, Fraction(1)], i)):
                out[j] += c * b
        return BinaryForm(self.degree, tuple(out))

    def dehomogenize(self) -> polys.Poly:
        """f(t, 1) as a polynomial in t."""
        return polys.normalize(self.coefficients)

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for i, c in enumerate(self.coefficients):
            if c:
                mono = "*".join(s for s in (
                    f"l^{i}" if i > 1 else ("l" if i == 1 else ""),
                    f"m^{d - i}" if d - i > 1 else ("m" if d - i == 1 else ""),
                ) if s)
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)


@dataclass(frozen=True)
class QuadricPencil:
    size: int
    A: tuple
    B: tuple
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        A, B = _matrix(self.A), _matrix(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        for name, M in (("A", A), ("B", B)):
            if len(M) != self.size or any(len(r) != self.size for r in M):
                raise ValueError(f"{name} must be {self.size}x{self.size}")
            if any(M[i][j] != M[j][i] for i in range(self.size) for j in range(i)):
                raise ValueError(f"{name} is not symmetric")
        if self.size < 1:
            raise ValueError("empty pencil")
        if strict and not any(_disc_coefficients(self)):
            raise DegeneratePencil("det(lambda*A + mu*B) is identically zero")

    def congruence(self, S: Sequence[Sequence]) -> "QuadricPencil":
        """(S^T A S, S^T B S)."""
        S = _matrix(S)
        n = self.size

        def conj(M):
            MS = [[sum(M[i][k] * S[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            return tuple(tuple(sum(S[k][i] * MS[k][j] for k in range(n)) for j in range(n))
                         for i in range(n))

        return QuadricPencil(n, conj(self.A), conj(self.B))

    def to_json(self) -> dict:
        def enc(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"size": self.size,
                "A": [[enc(x) for x in r] for r in self.A],
                "B": [[enc(x) for x in r] for r in self.B]}


def diagonal_pencil(values: Sequence) -> QuadricPencil:
    """Identity against diag(values): the diagonalised normal form."""
    n = len(values)
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    B = [[Fraction(values[i]) if i == j else 0 for j in range(n)] for i in range(n)]
    return QuadricPencil(n, A, B)


def _disc_coefficients(p: QuadricPencil) -> list:
    n = p.size
    xs = list(range(n + 1))
    ys = [det([[x * p.A[i][j] + p.B[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = polys.interpolate(xs, ys)
    return coeffs + [Fraction(0)] * (n + 1 - len(coeffs))


def discriminant_form(p: QuadricPencil) -> BinaryForm:
    """det(lambda*A + mu*B), by interpolation at lambda = 0..size, mu = 1."""
    coeffs = _disc_coefficients(p)
    if not any(coeffs):
        raise DegeneratePencil("det(lambda*A + mu*B) is identically zero")
    return BinaryForm(p.size, tuple(coeffs))


# ---------------------------------------------------------------- multiplicities

@dataclass(frozen=True)
class ProfilePart:
    multiplicity: int
    degree: int
    factor: tuple  # monic squarefree factor in t = lambda/mu; () for the root at infinity
    at_infinity: bool = False


@dataclass(frozen=True)
class MultiplicityProfile:
    form_degree: int
    parts: tuple

    @property
    def max_multiplicity(self) -> int:
        return max((p.multiplicity for p in self.parts), default=0)

    @property
    def root_count(self) -> int:
        """Number of distinct roots in P^1 (over the algebraic closure)."""
        return sum(p.degree for p in self.parts)

    def multiplicities(self) -> list[int]:
        """Root multiplicities, one entry per distinct root, descending."""
        out = []
        for p in self.parts:
            out += [p.multiplicity] * p.degree
        return sorted(out, reverse=True)


def multiplicity_profile(f: BinaryForm) -> MultiplicityProfile:
    p = f.dehomogenize()
    at_inf = f.degree - polys.degree(p)
    parts = [ProfilePart(i, polys.degree(g), tuple(g)) for i, g in polys.squarefree_decomposition(p)]
    if at_inf:
        parts.append(ProfilePart(at_inf, 1, (), at_infinity=True))
    parts.sort(key=lambda q: (-q.multiplicity, q.at_infinity, q.factor))
    return MultiplicityProfile(f.degree, tuple(parts))


# ---------------------------------------------------------------- verdicts

class Stability(str, Enum):
    STABLE = "stable"
    STRICTLY_POLYSTABLE = "strictly_polystable"
    SEMISTABLE = "semistable_not_polystable"
    UNSTABLE = "unstable"

    def __str__(self) -> str:
        return self.value

    @property
    def polystable(self) -> bool:
        return self in (Stability.STABLE, Stability.STRICTLY_POLYSTABLE)

    @property
    def semistable(self) -> bool:
        return self is not Stability.UNSTABLE


@dataclass(frozen=True)
class GITVerdict:
    verdict: Stability
    witness: str


def binary_form_stability(f: BinaryForm) -> GITVerdict:
    """Hilbert-Mumford for binary forms: compare the top root multiplicity with d/2."""
    prof = multiplicity_profile(f)
    d, top = f.degree, prof.max_multiplicity
    mults = prof.multiplicities()
    if 2 * top < d:
        return GITVerdict(Stability.STABLE, f"max multiplicity {top} < {d}/2")
    if 2 * top > d:
        return GITVerdict(Stability.UNSTABLE, f"max multiplicity {top} > {d}/2")
    if mults == [top, top]:
        return GITVerdict(Stability.STRICTLY_POLYSTABLE, f"two roots of multiplicity {top}")
    return GITVerdict(Stability.SEMISTABLE, f"root of multiplicity {top} = {d}/2, multiplicities {mults}")


def pencil_stability(p: QuadricPencil) -> GITVerdict:
    """Verdict for the intersection of the two quadrics.

    Stable iff all roots of the discriminant are simple; strictly polystable
    iff roots are at most double, or (sextics) two triple roots; unstable
    otherwise.
    """
    try:
        f = discriminant_form(p)
    except DegeneratePencil:
        return GITVerdict(Stability.UNSTABLE, "degenerate: discriminant vanishes identically")
    prof = multiplicity_profile(f)
    mults = prof.multiplicities()
    top = prof.max_multiplicity
    if top == 1:
        return GITVerdict(Stability.STABLE, f"{len(mults)} distinct roots")
    if top == 2:
        return GITVerdict(Stability.STRICTLY_POLYSTABLE, f"root multiplicities {mults} (pairs only)")
    if p.size == 6 and mults == [3, 3]:
        return GITVerdict(Stability.STRICTLY_POLYSTABLE, "two triple roots (x^3 y^3 orbit)")
    form = binary_form_stability(f).verdict
    return GITVerdict(Stability.UNSTABLE, f"root multiplicities {mults}; binary form alone is {form}")
