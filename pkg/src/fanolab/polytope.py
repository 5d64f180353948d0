"""Fano polytopes and their duals.

A :class:`FanoPolytope` is a lattice polytope with primitive vertices and the
origin strictly inside; its face fan defines a toric Fano variety. The dual
:class:`DualPolytope` is cut out by ``<y, v> >= -1`` over the vertices ``v``
and carries the anticanonical data (degree, sections, Cartier index).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import ceil, factorial, floor, lcm
from typing import Iterable, Optional, Sequence

from .lattice import (
    RationalVector,
    UnimodularMap,
    apply_map,
    basis_to_e1,
    content,
    cross3,
    det2,
    det3,
    dot,
    is_primitive,
    lattice_vector,
)


class InvalidPolytope(ValueError):
    """Raised when a vertex set does not define a Fano polytope."""


@dataclass(frozen=True)
class FanoPolytope:
    dim: int
    vertices: tuple
    # 3D only: vertex-index tuples of each facet, cyclically ordered
    facets: tuple = field(default=(), compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self):
        """Consecutive vertex pairs (v_i, v_{i+1}), 2D only."""
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class DualPolytope:
    dim: int
    vertices: tuple
    # inequality data <y, n> >= -1 (the vertices of the primal polytope)
    normals: tuple = field(default=(), compare=False, repr=False)
    # 3D only: for each normal, indices of the dual vertices on that facet, ordered
    facets: tuple = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class PolytopeSummary:
    degree: Fraction
    picard_rank: Optional[int]
    gorenstein_index: int
    reflexive: bool
    barycenter: RationalVector


# ---------------------------------------------------------------- hulls

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Iterable[Sequence]) -> list:
    """Strict convex hull (no collinear points), counterclockwise.

    Works for any exact ordered coordinates (ints or Fractions).
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def ccw_from_lex_min(vertices: Sequence) -> tuple:
    """Rotate a counterclockwise cycle to start at its lexicographic minimum."""
    vs = list(vertices)
    i = vs.index(min(vs))
    return tuple(vs[i:] + vs[:i])


def _facets_3d(points: list) -> list:
    """Supporting planes of a full-dimensional 3D point set.

    Returns a list of (outward primitive normal u, offset c, on_plane points)
    with ``<u, x> <= c`` on the whole set.
    """
    seen = {}
    for a, b, c in combinations(points, 3):
        n = cross3(tuple(x - y for x, y in zip(b, a)), tuple(x - y for x, y in zip(c, a)))
        if n == (0, 0, 0):
            continue
        g = content(n)
        n = tuple(x // g for x in n)
        off = dot(n, a)
        side = [dot(n, p) - off for p in points]
        if all(s <= 0 for s in side):
            u = n
        elif all(s >= 0 for s in side):
            u, off = tuple(-x for x in n), -off
        else:
            continue
        if u in seen:
            continue
        seen[u] = (off, [p for p in points if dot(u, p) == off])
    return [(u, off, on) for u, (off, on) in seen.items()]


def _order_planar(points: list, normal: Sequence) -> list:
    """Order coplanar 3D points cyclically as the vertices of their hull."""
    # drop a coordinate where the normal is nonzero; projection keeps convexity
    k = next(i for i, x in enumerate(normal) if x != 0)
    keep = [i for i in range(3) if i != k]
    proj = {tuple(p[i] for i in keep): p for p in points}
    return [proj[q] for q in convex_hull_2d(proj)]


# ---------------------------------------------------------------- construction

def make_fano(raw_vertices: Iterable[Sequence[int]]) -> FanoPolytope:
    pts = [lattice_vector(v) for v in raw_vertices]
    if not pts:
        raise InvalidPolytope("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise InvalidPolytope("points of mixed dimension")
    if dim == 2:
        return _make_fano_2d(pts)
    if dim == 3:
        return _make_fano_3d(pts)
    raise InvalidPolytope(f"dimension {dim} is not supported (2 or 3 only)")


def _make_fano_2d(pts: list) -> FanoPolytope:
    if len(set(pts)) < 3:
        raise InvalidPolytope("need at least 3 points in dimension 2")
    hull = convex_hull_2d(pts)
    if len(hull) < 3:
        raise InvalidPolytope("degenerate (lower-dimensional) hull")
    for v in hull:
        if v == (0, 0) or not is_primitive(v):
            raise InvalidPolytope(f"vertex {v} is not primitive")
    n = len(hull)
    for i in range(n):
        if det2(hull[i], hull[(i + 1) % n]) <= 0:
            raise InvalidPolytope("origin is not in the interior")
    return FanoPolytope(2, ccw_from_lex_min(hull))


def _make_fano_3d(pts: list) -> FanoPolytope:
    pts = sorted(set(pts))
    planes = _facets_3d(pts)
    if len(planes) < 4:
        raise InvalidPolytope("degenerate (lower-dimensional) hull")
    verts = set()
    ordered = []
    for u, off, on in planes:
        if off <= 0:
            raise InvalidPolytope("origin is not in the interior")
        cyc = _order_planar(on, u)
        verts.update(cyc)
        ordered.append(cyc)
    vertices = tuple(sorted(verts))
    for v in vertices:
        if not is_primitive(v):
            raise InvalidPolytope(f"vertex {v} is not primitive")
    index = {v: i for i, v in enumerate(vertices)}
    facets = tuple(tuple(index[v] for v in cyc) for cyc in ordered)
    return FanoPolytope(3, vertices, facets)


# ---------------------------------------------------------------- duality

def dual(P: FanoPolytope) -> DualPolytope:
    if P.dim == 2:
        ws = []
        vs = P.vertices
        n = len(vs)
        for i in range(n):
            a, b = vs[i - 1], vs[i]
            d = abs(det2(a, b))
            ws.append((Fraction(a[1] - b[1], d), Fraction(b[0] - a[0], d)))
        return DualPolytope(2, tuple(ws), normals=vs)
    # 3D: one dual vertex per facet, w = -u / c
    ws = []
    for f in P.facets:
        a, b, c = (P.vertices[i] for i in f[:3])
        n = cross3(tuple(x - y for x, y in zip(b, a)), tuple(x - y for x, y in zip(c, a)))
        off = dot(n, a)
        if off < 0:
            n, off = tuple(-x for x in n), -off
        ws.append(tuple(Fraction(-x, off) for x in n))
    dual_facets = []
    for vi, v in enumerate(P.vertices):
        on = [w for fi, w in enumerate(ws) if vi in P.facets[fi]]
        cyc = _order_planar(on, v)
        dual_facets.append(tuple(ws.index(w) for w in cyc))
    return DualPolytope(3, tuple(ws), normals=P.vertices, facets=tuple(dual_facets))


def is_integral(Q: DualPolytope) -> bool:
    return all(x.denominator == 1 for w in Q.vertices for x in w)


def polar(Q: DualPolytope) -> FanoPolytope:
    """The dual of a lattice dual polytope, as a Fano polytope (reflexive case)."""
    if not is_integral(Q):
        raise InvalidPolytope("polar of a non-lattice polytope is not a lattice polytope")
    P2 = make_fano([tuple(int(x) for x in w) for w in Q.vertices])
    Q2 = dual(P2)
    return make_fano([tuple(int(x) for x in w) for w in Q2.vertices])


# ---------------------------------------------------------------- measures

def _simplices(Q: DualPolytope):
    """Yield the vertex tuples of a triangulation of Q coned from the origin."""
    if Q.dim == 2:
        ws = Q.vertices
        for i in range(len(ws)):
            yield (ws[i], ws[(i + 1) % len(ws)])
    else:
        for f in Q.facets:
            p0 = Q.vertices[f[0]]
            for j in range(1, len(f) - 1):
                yield (p0, Q.vertices[f[j]], Q.vertices[f[j + 1]])


def _simplex_volume(s) -> Fraction:
    if len(s) == 2:
        return Fraction(abs(det2(*s)), 2)
    return Fraction(abs(det3(*s)), 6)


def volume(Q: DualPolytope) -> Fraction:
    return sum((_simplex_volume(s) for s in _simplices(Q)), Fraction(0))


def degree(P: FanoPolytope) -> Fraction:
    return factorial(P.dim) * volume(dual(P))


def degree_edge_formula(P: FanoPolytope) -> Fraction:
    """Anticanonical degree from the ray generators alone.

    For counterclockwise vertices the middle determinant enters with sign:
    ``det(v_{i+1}, v_{i-1})`` is negative when the two neighbours span an
    angle below pi.
    """
    if P.dim != 2:
        raise InvalidPolytope("the edge formula is two-dimensional")
    vs = P.vertices
    n = len(vs)
    total = Fraction(0)
    for i in range(n):
        prev, cur, nxt = vs[i - 1], vs[i], vs[(i + 1) % n]
        d_in = abs(det2(prev, cur))
        d_out = abs(det2(cur, nxt))
        total += Fraction(2, d_in)
        total += Fraction(det2(nxt, prev), d_in * d_out)
    return total


def barycenter(Q: DualPolytope) -> RationalVector:
    k = Q.dim + 1
    vol = Fraction(0)
    acc = [Fraction(0)] * Q.dim
    for s in _simplices(Q):
        w = _simplex_volume(s)
        vol += w
        for i in range(Q.dim):
            acc[i] += w * sum(p[i] for p in s) / k
    return tuple(a / vol for a in acc)


def ehrhart_count(Q: DualPolytope, k: int) -> int:
    """Number of lattice points in the dilate ``k * Q``."""
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    if k == 0:
        return 1
    lo = [floor(min(w[i] for w in Q.vertices) * k) for i in range(Q.dim)]
    hi = [ceil(max(w[i] for w in Q.vertices) * k) for i in range(Q.dim)]
    normals = Q.normals or _normals_from_vertices(Q)
    return sum(1 for y in _box(lo, hi) if all(dot(y, n) >= -k for n in normals))


def _normals_from_vertices(Q: DualPolytope) -> tuple:
    # only reachable for hand-built 2D polytopes; facet data from the edges
    if Q.dim != 2:
        raise InvalidPolytope("inequalities unavailable for this polytope")
    out = []
    ws = Q.vertices
    for i in range(len(ws)):
        a, b = ws[i], ws[(i + 1) % len(ws)]
        d = det2(a, b)
        out.append((-(b[1] - a[1]) / d, (b[0] - a[0]) / d))
    return tuple(out)


def _box(lo, hi):
    if not lo:
        yield ()
        return
    for x in range(lo[0], hi[0] + 1):
        for rest in _box(lo[1:], hi[1:]):
            yield (x,) + rest


def gorenstein_index(P: FanoPolytope) -> int:
    return reduce(lcm, (x.denominator for w in dual(P).vertices for x in w), 1)


def picard_rank(P: FanoPolytope) -> int:
    if P.dim == 3 and any(len(f) != 3 for f in P.facets):
        raise InvalidPolytope("Picard rank formula needs a simplicial polytope")
    return len(P.vertices) - P.dim


def summarize(P: FanoPolytope) -> PolytopeSummary:
    Q = dual(P)
    idx = gorenstein_index(P)
    try:
        rho = picard_rank(P)
    except InvalidPolytope:
        rho = None
    return PolytopeSummary(
        degree=factorial(P.dim) * volume(Q),
        picard_rank=rho,
        gorenstein_index=idx,
        reflexive=idx == 1,
        barycenter=barycenter(Q),
    )


# ---------------------------------------------------------------- GL(2, Z) normal form

def transform(P: FanoPolytope, U: UnimodularMap) -> FanoPolytope:
    return make_fano([apply_map(U, v) for v in P.vertices])


def edge_heights(P: FanoPolytope) -> list[int]:
    """Lattice distance from the origin to each edge line (2D)."""
    return [abs(det2(a, b)) // content((b[0] - a[0], b[1] - a[1])) for a, b in P.edges()]


def normal_form(P: FanoPolytope) -> FanoPolytope:
    """Canonical representative of the GL(2, Z)-orbit of ``P``.

    Each edge of minimal determinant, read in either direction, is moved to
    a fixed position (first vertex (1, 0), second vertex (x, y) with
    y > 0 and 0 <= x < y); the lexicographically smallest resulting vertex
    tuple wins.
    """
    if P.dim != 2:
        raise InvalidPolytope("normal_form is implemented for polygons only")
    vs = P.vertices
    n = len(vs)
    dets = [abs(det2(vs[i], vs[(i + 1) % n])) for i in range(n)]
    dmin = min(dets)
    best = None
    for i in range(n):
        for step in (1, -1):
            a = vs[i]
            b = vs[(i + step) % n]
            if abs(det2(a, b)) != dmin:
                continue
            U = basis_to_e1(a)
            x, y = apply_map(U, b)
            flip = -1 if y < 0 else 1
            y *= flip
            t = -(x // y)
            # (x, y) -> (x + t y, flip * y) composed with U
            S = UnimodularMap(((1, t * flip), (0, flip))) @ U
            img = [apply_map(S, v) for v in vs]
            hull = ccw_from_lex_min(convex_hull_2d(img))
            if best is None or hull < best:
                best = hull
    return FanoPolytope(2, best)


# ---------------------------------------------------------------- named families

def weighted_p11n(n: int) -> FanoPolytope:
    """Fan of the weighted projective plane P(1, 1, n)."""
    return make_fano([(1, 0), (0, 1), (-1, -n)])


def y_family(n: int) -> FanoPolytope:
    return make_fano([(-n, 1), (n, 1), (n, -1), (-n, -1)])


def rank1_triangle(k: int, l: int) -> FanoPolytope:
    """Balanced triangle with vertices (0,1), (-k,-l), (k,l-1)."""
    return make_fano([(0, 1), (-k, -l), (k, l - 1)])


def xd_threefold(d: int) -> FanoPolytope:
    return make_fano([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -d)])


P2 = ((1, 0), (0, 1), (-1, -1))
CROSS_POLYTOPE = ((1, 0), (0, 1), (-1, 0), (0, -1))
HEXAGON = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
BLOWUP_P2_ONE_POINT = ((1, 0), (0, 1), (-1, -1), (1, 1))
