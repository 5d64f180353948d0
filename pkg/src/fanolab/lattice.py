"""Exact lattice primitives: integer vectors, 2x2 determinants, GL(n, Z) maps
and the normal form of a two-dimensional rational cone.

Vectors are plain tuples: integer tuples live in the lattice N, tuples of
:class:`fractions.Fraction` live in the dual space M (x) Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


class LatticeError(ValueError):
    """Invalid lattice input (zero, parallel, non-primitive or mismatched vectors)."""


def lattice_vector(coords: Sequence[int]) -> LatticeVector:
    out = []
    for c in coords:
        if isinstance(c, bool) or int(c) != c:
            raise LatticeError(f"non-integer coordinate {c!r}")
        out.append(int(c))
    if len(out) < 1:
        raise LatticeError("empty vector")
    return tuple(out)


def rational_vector(coords: Sequence) -> RationalVector:
    return tuple(Fraction(c) for c in coords)


def content(v: Sequence[int]) -> int:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    g = content(v)
    if g == 0:
        raise LatticeError("the zero vector is not a lattice direction")
    return g == 1


def det2(a: Sequence, b: Sequence):
    if len(a) != 2 or len(b) != 2:
        raise LatticeError(f"det2 needs two 2-vectors, got {len(a)} and {len(b)}")
    return a[0] * b[1] - a[1] * b[0]


def cross3(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise LatticeError("dimension mismatch")
    return sum(x * y for x, y in zip(a, b))


def det3(a: Sequence, b: Sequence, c: Sequence):
    return dot(a, cross3(b, c))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a: int, m: int) -> int:
    g, x, _ = xgcd(a % m, m)
    if g != 1:
        raise LatticeError(f"{a} is not invertible modulo {m}")
    return x % m


def _int_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * _int_det(minor)
    return total


@dataclass(frozen=True)
class UnimodularMap:
    """An element of GL(n, Z), acting on column vectors."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LatticeError("unimodular map must be a square matrix")
        if _int_det(rows) not in (1, -1):
            raise LatticeError(f"matrix {rows} is not unimodular")
        object.__setattr__(self, "matrix", rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def det(self) -> int:
        return _int_det(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "UnimodularMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __call__(self, v: Sequence) -> tuple:
        return apply_map(self, v)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        n = self.dim
        return UnimodularMap(tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        ))

    def inverse_transpose(self) -> "UnimodularMap":
        # adjugate / det, transposed; exact because det = +-1
        n = self.dim
        d = self.det
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(self.matrix) if k != i]
                row.append((-1) ** (i + j) * (_int_det(minor) if minor else 1) * d)
            cof.append(tuple(row))
        return UnimodularMap(tuple(cof))


def apply_map(U: UnimodularMap, v: Sequence) -> tuple:
    if len(v) != U.dim:
        raise LatticeError(f"map of size {U.dim} applied to vector of length {len(v)}")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in U.matrix)


def basis_to_e1(v: Sequence[int]) -> UnimodularMap:
    """A map in SL(2, Z) sending the primitive vector ``v`` to (1, 0)."""
    a, b = v
    g, x, y = xgcd(a, b)
    if g != 1:
        raise LatticeError(f"{tuple(v)} is not primitive")
    return UnimodularMap(((x, y), (-b, a)))


@dataclass(frozen=True, order=True)
class CyclicQuotientType:
    """The cyclic quotient singularity 1/m(1, q).

    ``q`` is always the canonical representative ``min(q, q^-1 mod m)``;
    smooth cones are ``(1, 0)``.
    """

    m: int
    q: int

    def __post_init__(self):
        if self.m < 1:
            raise LatticeError("group order must be positive")
        if self.m == 1:
            if self.q != 0:
                raise LatticeError("smooth type must be 1/1(1,0)")
            return
        if not 0 < self.q < self.m or gcd(self.m, self.q) != 1:
            raise LatticeError(f"invalid weight q={self.q} for m={self.m}")
        if self.q != canonical_weight(self.m, self.q):
            raise LatticeError(f"q={self.q} is not the canonical representative mod {self.m}")

    @classmethod
    def of(cls, m: int, q: int) -> "CyclicQuotientType":
        """Build from any representative ``q`` (reduced and canonicalised)."""
        if m == 1:
            return cls(1, 0)
        return cls(m, canonical_weight(m, q % m))

    @property
    def is_smooth(self) -> bool:
        return self.m == 1

    @property
    def is_du_val(self) -> bool:
        return self.m > 1 and self.q == self.m - 1

    @property
    def inverse_weight(self) -> int:
        return 0 if self.m == 1 else mod_inverse(self.q, self.m)

    def label(self) -> str:
        if self.m == 1:
            return "smooth"
        if self.is_du_val:
            return f"A_{self.m - 1}"
        return f"1/{self.m}(1,{self.q})"

    def __str__(self) -> str:
        return self.label()


def canonical_weight(m: int, q: int) -> int:
    if m == 1:
        return 0
    q %= m
    return min(q, mod_inverse(q, m))


def cone_normal_form(v0: Sequence[int], v1: Sequence[int]) -> CyclicQuotientType:
    """Type 1/m(1, q) of the cone spanned by two primitive 2D rays.

    A unimodular change of basis sends ``v0`` to (0, 1) and ``v1`` to
    (m, -q) with 0 <= q < m.
    """
    if len(v0) != 2 or len(v1) != 2:
        raise LatticeError("cone_normal_form is defined for 2D rays only")
    if not (is_primitive(v0) and is_primitive(v1)):
        raise LatticeError(f"rays {tuple(v0)}, {tuple(v1)} must be primitive")
    m = det2(v0, v1)
    if m == 0:
        raise LatticeError(f"rays {tuple(v0)}, {tuple(v1)} are parallel")
    # U v0 = (0, 1): rows (b, -a) and (x, y) with a x + b y = 1
    a, b = v0
    _, x, y = xgcd(a, b)
    X = b * v1[0] - a * v1[1]
    Y = x * v1[0] + y * v1[1]
    if X < 0:
        X = -X
    m = X
    if m == 1:
        return CyclicQuotientType(1, 0)
    return CyclicQuotientType.of(m, -Y)
