"""Exhaustive enumeration of toric log del Pezzo surfaces.

Polygons are grown edge by edge. Every edge of an LDP polygon of index
``l`` lies on a line at lattice height ``h`` from the origin, and the index
is the lcm of these heights, so all heights are bounded by ``l``. One edge
is moved by GL(2, Z) onto the line ``y = -h``; the remaining vertices are
searched inside a coordinate box, and classes are deduplicated by
:func:`normal_form`.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional

from .ke import KEVerdict, ke_toric_test
from .lattice import content, det2
from .polytope import (
    CROSS_POLYTOPE,
    HEXAGON,
    P2,
    FanoPolytope,
    PolytopeSummary,
    make_fano,
    normal_form,
    rank1_triangle,
    summarize,
    y_family,
)
from .singularities import SingularityReport, classify_edges, mumford_instability

log = logging.getLogger(__name__)

MAX_VERTICES = 9
# index 3 plateaus falsely at boxes 7-8 (box 9 adds a class), so floors keep a wide margin
BOX_FLOOR = {1: 4, 2: 8, 3: 12, 4: 16, 5: 20}


class ClassificationError(AssertionError):
    """A stated classification property failed to hold."""


class CompletenessWarning(UserWarning):
    """Enlarging the search box produced classes the configured box missed."""


@dataclass(frozen=True)
class EnumerationConfig:
    max_index: int = 1
    coordinate_box: Optional[int] = None
    stabilization_check: bool = False

    def __post_init__(self):
        if self.max_index < 1:
            raise ValueError("max_index must be positive")
        if self.coordinate_box is None:
            object.__setattr__(self, "coordinate_box", box_floor(self.max_index))
        if self.coordinate_box < box_floor(self.max_index):
            raise ValueError(
                f"box {self.coordinate_box} below the floor {box_floor(self.max_index)} "
                f"for index {self.max_index}")


def box_floor(max_index: int) -> int:
    return BOX_FLOOR.get(max_index, 4 * max_index)


@dataclass(frozen=True)
class ClassifiedSurface:
    polytope: FanoPolytope
    summary: PolytopeSummary
    singularities: SingularityReport
    ke: KEVerdict
    smoothable: bool

    @property
    def degree(self) -> Fraction:
        return self.summary.degree


def classify_surface(P: FanoPolytope) -> ClassifiedSurface:
    nf = normal_form(P)
    sing = classify_edges(nf)
    return ClassifiedSurface(
        polytope=nf,
        summary=summarize(nf),
        singularities=sing,
        ke=ke_toric_test(nf),
        smoothable=sing.all_t,
    )


def _sort_key(s: ClassifiedSurface):
    return (s.summary.gorenstein_index, -s.degree, len(s.polytope.vertices), s.polytope.vertices)


# ---------------------------------------------------------------- rank one

def classify_rank1() -> list[ClassifiedSurface]:
    """Balanced lattice triangles whose degree is an integer in 1..9.

    Balancing forces v0 + v1 + v2 = 0, so the triangle is
    {(0,1), (-k,-l), (k,l-1)} of degree 9/k and k divides 9. Each k-class
    is reduced over one full period of l modulo k.
    """
    out = []
    for k in (1, 3, 9):
        classes = {}
        for l in range(1, k + 1):
            if gcd(k, l) != 1 or gcd(k, l - 1) != 1:
                continue
            P = rank1_triangle(k, l)
            classes.setdefault(normal_form(P), l)
        for nf in classes:
            s = classify_surface(nf)
            if s.ke.ke_toric and s.smoothable:
                out.append(s)
    return sorted(out, key=lambda s: -s.degree)


def rank1_l_values(k: int) -> dict[int, FanoPolytope]:
    """Admissible l in 1..k for rank1_triangle(k, l), with their normal forms."""
    return {l: normal_form(rank1_triangle(k, l)) for l in range(1, k + 1)
            if gcd(k, l) == 1 and gcd(k, l - 1) == 1}


# ---------------------------------------------------------------- enumeration

def _height(a, b) -> int:
    return det2(a, b) // content((b[0] - a[0], b[1] - a[1]))


class _Search:
    def __init__(self, max_index: int, box: int):
        self.L = max_index
        self.B = box
        r = range(-box, box + 1)
        self.points = [(x, y) for x in r for y in r if (x, y) != (0, 0) and gcd(x, y) == 1]
        self._succ: dict = {}
        self.found: set = set()

    def successors(self, v):
        """Points w with det(v, w) > 0 and edge height at most L."""
        s = self._succ.get(v)
        if s is None:
            s = []
            for w in self.points:
                d = det2(v, w)
                if d > 0:
                    h = _height(v, w)
                    if h <= self.L:
                        s.append((w, h))
            self._succ[v] = s
        return s

    def run(self):
        L, B = self.L, self.B
        for h in range(1, L + 1):
            for a in range(h):
                if gcd(a, h) != 1:
                    continue
                v0 = (a, -h)
                for b in range(a + 1, B + 1):
                    if gcd(b, h) != 1:
                        continue
                    v1 = (b, -h)
                    self._extend([v0, v1], h, h)

    def _extend(self, chain, cur_lcm, base_h):
        v0 = chain[0]
        prev, cur = chain[-2], chain[-1]
        for w, hw in self.successors(cur):
            if w[1] <= -base_h:
                continue
            # strict left turn at cur
            if (cur[0] - prev[0]) * (w[1] - cur[1]) - (cur[1] - prev[1]) * (w[0] - cur[0]) <= 0:
                continue
            # v0 strictly left of cur -> w keeps the chain closable
            if (w[0] - cur[0]) * (v0[1] - cur[1]) - (w[1] - cur[1]) * (v0[0] - cur[0]) <= 0:
                continue
            new_lcm = lcm(cur_lcm, hw)
            if new_lcm > self.L:
                continue
            self._try_close(chain, w, new_lcm)
            if len(chain) + 1 < MAX_VERTICES:
                chain.append(w)
                self._extend(chain, new_lcm, base_h)
                chain.pop()

    def _try_close(self, chain, w, cur_lcm):
        v0, v1, cur = chain[0], chain[1], chain[-1]
        if det2(w, v0) <= 0:
            return
        if (w[0] - cur[0]) * (v0[1] - w[1]) - (w[1] - cur[1]) * (v0[0] - w[0]) <= 0:
            return
        if (v0[0] - w[0]) * (v1[1] - v0[1]) - (v0[1] - w[1]) * (v1[0] - v0[0]) <= 0:
            return
        if lcm(cur_lcm, _height(w, v0)) > self.L:
            return
        self.found.add(normal_form(FanoPolytope(2, tuple(chain) + (w,))))


def _enumerate_normal_forms(max_index: int, box: int) -> set:
    s = _Search(max_index, box)
    s.run()
    return s.found


def is_stable(max_index: int, box: int) -> bool:
    """True when box + 1 finds exactly the classes found in ``box``."""
    return _enumerate_normal_forms(max_index, box) == _enumerate_normal_forms(max_index, box + 1)


def enumerate_ldp(config: EnumerationConfig,
                  barycenter_zero: bool = False,
                  all_t: bool = False) -> list[ClassifiedSurface]:
    forms = _enumerate_normal_forms(config.max_index, config.coordinate_box)
    log.info("index <= %d, box %d: %d classes", config.max_index, config.coordinate_box, len(forms))
    if config.stabilization_check:
        bigger = _enumerate_normal_forms(config.max_index, config.coordinate_box + 1)
        if bigger != forms:
            msg = (f"box {config.coordinate_box} is not complete for index {config.max_index}: "
                   f"{len(bigger - forms)} new classes at box {config.coordinate_box + 1}")
            log.warning(msg)
            warnings.warn(msg, CompletenessWarning, stacklevel=2)
    surfaces = sorted((classify_surface(P) for P in forms), key=_sort_key)
    return filter_surfaces(surfaces, barycenter_zero=barycenter_zero, all_t=all_t)


def filter_surfaces(surfaces: Iterable[ClassifiedSurface], barycenter_zero: bool = False,
                    all_t: bool = False) -> list[ClassifiedSurface]:
    out = []
    for s in surfaces:
        if barycenter_zero and not s.ke.ke_toric:
            continue
        if all_t and not s.smoothable:
            continue
        out.append(s)
    return out


# ---------------------------------------------------------------- verifiers

# (name, vertices, degree, picard rank)
CLASSIFICATION_TABLE = (
    ("P^2", P2, 9, 1),
    ("P^1 x P^1", CROSS_POLYTOPE, 8, 2),
    ("Bl_3 P^2", HEXAGON, 6, 4),
    ("xy=z^2=tw", y_family(1).vertices, 4, 2),
    ("xyz=t^3", rank1_triangle(3, 2).vertices, 3, 1),
    ("Y_2", y_family(2).vertices, 2, 2),
    ("X_P (degree 1)", rank1_triangle(9, 2).vertices, 1, 1),
)


@dataclass
class CheckReport:
    """Named property checks; ``ok`` is False if any failed."""

    checks: list = field(default_factory=list)

    def add(self, subject: str, prop: str, expected, actual):
        self.checks.append((subject, prop, expected, actual, expected == actual))

    @property
    def ok(self) -> bool:
        return all(c[-1] for c in self.checks)

    def raise_on_failure(self):
        for subject, prop, expected, actual, passed in self.checks:
            if not passed:
                raise ClassificationError(f"{subject}: {prop} expected {expected}, got {actual}")


def verify_classification_table() -> CheckReport:
    rep = CheckReport()
    for name, verts, deg, rho in CLASSIFICATION_TABLE:
        s = classify_surface(make_fano(verts))
        rep.add(name, "degree", Fraction(deg), s.degree)
        rep.add(name, "picard rank", rho, s.summary.picard_rank)
        rep.add(name, "barycenter zero", True, s.ke.ke_toric)
        rep.add(name, "all singularities T", True, s.smoothable)
    rep.raise_on_failure()
    return rep


def verify_y_family(n_max: int) -> CheckReport:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    rep = CheckReport()
    for n in range(1, n_max + 1):
        P = y_family(n)
        name = f"Y_{n}"
        summary = summarize(P)
        sing = classify_edges(P)
        rep.add(name, "degree", Fraction(4, n), summary.degree)
        rep.add(name, "min discrepancy", Fraction(1, n) - 1, sing.min_discrepancy)
        veronese = "A_1" if n == 1 else f"1/{2 * n}(1,1)"
        rep.add(name, "singularities", sorted([veronese] * 2 + [f"A_{2 * n - 1}"] * 2),
                sorted(e.type.label() for e in sing.singular))
        rep.add(name, "barycenter zero", True, all(x == 0 for x in summary.barycenter))
        rep.add(name, "Mumford unstable", n >= 4, mumford_instability(sing, 2))
    rep.raise_on_failure()
    return rep
