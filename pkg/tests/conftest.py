import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import settings, strategies as st

from fanolab.lattice import UnimodularMap
from fanolab.polytope import InvalidPolytope, make_fano

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


def random_fano_polygon(rng: random.Random, radius: int = 6):
    """Hull of a few random primitive points; None if it is not Fano."""
    k = rng.randint(3, 8)
    pts = []
    while len(pts) < k:
        p = (rng.randint(-radius, radius), rng.randint(-radius, radius))
        if p != (0, 0) and gcd(*p) == 1:
            pts.append(p)
    try:
        return make_fano(pts)
    except InvalidPolytope:
        return None


def fano_polygons(count: int, seed: int = 0, radius: int = 6):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        P = random_fano_polygon(rng, radius)
        if P is not None:
            out.append(P)
    return out


@st.composite
def fano_polygon(draw, radius: int = 6):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    while True:
        P = random_fano_polygon(rng, radius)
        if P is not None:
            return P


@st.composite
def sl2z(draw, steps: int = 6):
    """Random word in the elementary generators of SL(2, Z), det -1 allowed."""
    M = UnimodularMap.identity(2)
    gens = [
        UnimodularMap(((1, 1), (0, 1))),
        UnimodularMap(((1, 0), (1, 1))),
        UnimodularMap(((0, -1), (1, 0))),
        UnimodularMap(((1, 0), (0, -1))),
    ]
    for i in draw(st.lists(st.integers(0, 3), max_size=steps)):
        M = M @ gens[i]
    return M


@st.composite
def rational(draw, bound: int = 5):
    num = draw(st.integers(-bound, bound))
    den = draw(st.integers(1, bound))
    return Fraction(num, den)


@st.composite
def coprime_pair(draw, max_m: int = 200):
    m = draw(st.integers(2, max_m))
    q = draw(st.integers(1, m - 1).filter(lambda q: gcd(q, m) == 1))
    return m, q


@pytest.fixture
def tmp_json(tmp_path):
    import json

    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return write
