"""Cyclic quotient singularities of toric surfaces.

Every cone of a complete 2D fan is, up to GL(2, Z), the cone over
(0, 1) and (m, -q), i.e. the quotient C^2 / Z_m with weights (1, q).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, isqrt
from typing import Optional

from .lattice import CyclicQuotientType, cone_normal_form
from .polytope import FanoPolytope, InvalidPolytope


@dataclass(frozen=True)
class TSingularityWitness:
    """Parameters of 1/dn^2(1, dna - 1); ``canonical_flag`` marks Du Val points."""

    d: int
    n: int
    a: int
    canonical_flag: bool = False

    def label(self) -> str:
        return f"({self.d},{self.n},{self.a})"


@dataclass(frozen=True)
class SingularityEntry:
    edge: int
    type: CyclicQuotientType
    discrepancy: Optional[Fraction]
    t_witness: Optional[TSingularityWitness]
    multiplicity: int
    qg_def_dim: Optional[int]

    def label(self) -> str:
        t = self.type
        if t.is_smooth or t.is_du_val:
            return t.label()
        if self.t_witness is not None:
            return self.t_witness.label()
        return t.label()


@dataclass(frozen=True)
class SingularityReport:
    entries: tuple
    gamma_max: int
    min_discrepancy: Optional[Fraction]

    @property
    def singular(self) -> list:
        return [e for e in self.entries if not e.type.is_smooth]

    @property
    def all_t(self) -> bool:
        return all(e.type.is_smooth or e.t_witness is not None for e in self.entries)

    def labels(self) -> list[str]:
        """Sorted labels of the singular points."""
        return sorted(e.label() for e in self.singular)


def hj_expansion(m: int, q: int) -> list[int]:
    """Hirzebruch-Jung continued fraction m/q = b1 - 1/(b2 - 1/(...))."""
    if not (m > 1 and 0 < q < m and gcd(m, q) == 1):
        raise ValueError(f"invalid cyclic quotient data m={m}, q={q}")
    out = []
    a, b = m, q
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def resolution_rays(m: int, q: int) -> list[tuple[int, int]]:
    """Exceptional rays of the minimal resolution of cone((0,1), (m,-q))."""
    prev, cur = (0, 1), (1, 0)
    rays = []
    for b in hj_expansion(m, q):
        rays.append(cur)
        prev, cur = cur, (b * cur[0] - prev[0], b * cur[1] - prev[1])
    assert cur == (m, -q)
    return rays


def discrepancy(t: CyclicQuotientType) -> Optional[Fraction]:
    """Minimal discrepancy over the exceptional curves of the minimal resolution."""
    if t.is_smooth:
        return None
    # functional equal to 1 on (0, 1) and (m, -q)
    alpha = Fraction(1 + t.q, t.m)
    return min(alpha * x + y for x, y in resolution_rays(t.m, t.q)) - 1


def is_t_singularity(t: CyclicQuotientType) -> Optional[TSingularityWitness]:
    if t.is_smooth:
        return None
    m = t.m
    if t.is_du_val:
        return TSingularityWitness(m, 1, 1, canonical_flag=True)
    reps = {t.q, t.inverse_weight}
    for n in range(2, isqrt(m) + 1):
        if m % (n * n):
            continue
        d = m // (n * n)
        for a in range(1, n):
            if gcd(n, a) == 1 and (d * n * a - 1) % m in reps:
                return TSingularityWitness(d, n, a)
    return None


def qg_deformation_dim(t: CyclicQuotientType) -> Optional[int]:
    w = is_t_singularity(t)
    if w is None:
        return None
    if w.canonical_flag:
        return t.m - 1
    return w.d


# ---------------------------------------------------------------- multiplicity

def invariant_monoid_generators(m: int, q: int) -> list[tuple[int, int]]:
    """Minimal generators of {(i, j) >= 0 : i + q j = 0 mod m}."""
    elems = [(i, j) for i in range(m + 1) for j in range(m + 1)
             if (i, j) != (0, 0) and (i + q * j) % m == 0]
    s = set(elems)
    gens = []
    for e in elems:
        if not any((e[0] - f[0], e[1] - f[1]) in s for f in elems if f != e
                   and f[0] <= e[0] and f[1] <= e[1]):
            gens.append(e)
    return sorted(gens)


def _order_counts(m: int, q: int, kmax: int) -> list[int]:
    """counts[k] = dim O / m^k for k = 0..kmax (monomials of order < k)."""
    gens = invariant_monoid_generators(m, q)
    top = max(i + j for i, j in gens)
    bound = kmax * top
    order = {(0, 0): 0}
    for deg in range(1, bound + 1):
        for i in range(deg + 1):
            j = deg - i
            if (i + q * j) % m:
                continue
            best = 0
            for gi, gj in gens:
                prev = order.get((i - gi, j - gj))
                if prev is not None and prev + 1 > best:
                    best = prev + 1
            order[(i, j)] = best
    counts = [0] * (kmax + 1)
    for (i, j), o in order.items():
        # order >= ceil(deg / top) so everything of order < kmax is in the box
        for k in range(o + 1, kmax + 1):
            counts[k] += 1
    return counts


@lru_cache(maxsize=None)
def hilbert_samuel_multiplicity(m: int, q: int) -> int:
    """Multiplicity of 1/m(1, q) by counting invariant monomials.

    ``dim O / m^k`` is eventually a quadratic in k whose second difference
    is the multiplicity; the box grows until that difference is stable.
    """
    if m == 1:
        return 1
    kmax = 8
    while True:
        c = _order_counts(m, q, kmax)
        second = [c[k + 2] - 2 * c[k + 1] + c[k] for k in range(kmax - 1)]
        tail = second[-4:]
        if len(set(tail)) == 1:
            return tail[0]
        kmax *= 2


def multiplicity(t: CyclicQuotientType) -> int:
    if t.is_smooth:
        return 1
    if t.is_du_val:
        return 2
    if t.q == 1:
        return t.m
    return hilbert_samuel_multiplicity(t.m, t.q)


def embedding_dimension(t: CyclicQuotientType) -> int:
    if t.is_smooth:
        return 2
    return len(invariant_monoid_generators(t.m, t.q))


# ---------------------------------------------------------------- reports

def analyze_type(t: CyclicQuotientType, edge: int = 0) -> SingularityEntry:
    w = is_t_singularity(t)
    return SingularityEntry(
        edge=edge,
        type=t,
        discrepancy=discrepancy(t),
        t_witness=w,
        multiplicity=multiplicity(t),
        qg_def_dim=qg_deformation_dim(t),
    )


def classify_edges(P: FanoPolytope) -> SingularityReport:
    if P.dim != 2:
        raise InvalidPolytope("edge classification is two-dimensional")
    entries = tuple(analyze_type(cone_normal_form(a, b), i) for i, (a, b) in enumerate(P.edges()))
    discs = [e.discrepancy for e in entries if e.discrepancy is not None]
    return SingularityReport(
        entries=entries,
        gamma_max=max(e.type.m for e in entries),
        min_discrepancy=min(discs) if discs else None,
    )


def total_qg_def_dim(report: SingularityReport) -> Optional[int]:
    dims = [e.qg_def_dim for e in report.singular]
    if any(d is None for d in dims):
        return None
    return sum(dims)


def mumford_instability(report: SingularityReport, complex_dim: int = 2) -> bool:
    """True when some point violates Mult(p) <= (dim + 1)!."""
    bound = factorial(complex_dim + 1)
    return any(e.multiplicity > bound for e in report.entries)
