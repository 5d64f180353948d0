import random
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import rational
from fanolab import polys
from fanolab.pencil import (
    BinaryForm,
    DegeneratePencil,
    QuadricPencil,
    Stability,
    binary_form_stability,
    diagonal_pencil,
    discriminant_form,
    multiplicity_profile,
    pencil_stability,
)

POOL = (Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 3))


def multiset_oracle(values):
    mults = sorted(Counter(values).values(), reverse=True)
    if mults[0] == 1:
        return Stability.STABLE
    if mults[0] == 2:
        return Stability.STRICTLY_POLYSTABLE
    if len(values) == 6 and mults == [3, 3]:
        return Stability.STRICTLY_POLYSTABLE
    return Stability.UNSTABLE


def random_sl(rng, n):
    """Product of random unit lower and upper triangular rational matrices."""
    def r():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    L = [[Fraction(int(i == j)) if i <= j else r() for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) if i >= j else r() for j in range(n)] for i in range(n)]
    return [[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_pencil(rng, n):
    def sym():
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = Fraction(rng.randint(-3, 3))
        return M
    while True:
        try:
            return QuadricPencil(n, sym(), sym())
        except DegeneratePencil:
            continue


@st.composite
def factored_form(draw):
    """Product of powers of distinct linear factors, plus an optional root at infinity."""
    roots = draw(st.lists(rational(6), min_size=1, max_size=4, unique=True))
    exps = draw(st.lists(st.integers(1, 4), min_size=len(roots), max_size=len(roots)))
    inf = draw(st.integers(0, 3))
    factors = []
    for r, e in zip(roots, exps):
        factors += [(1, -r)] * e
    factors += [(0, 1)] * inf
    expected = sorted(exps + ([inf] if inf else []), reverse=True)
    return BinaryForm.from_linear_factors(factors), expected


def test_pool_is_exhaustive_and_matches_oracle():
    seen = 0
    for size in (5, 6):
        for values in combinations_with_replacement(POOL, size):
            got = pencil_stability(diagonal_pencil(values)).verdict
            assert got is multiset_oracle(values), values
            seen += 1
    assert seen == 56 + 84


def test_reference_examples():
    assert pencil_stability(diagonal_pencil([0, 1, 2, 3, 4])).verdict is Stability.STABLE
    assert pencil_stability(diagonal_pencil([1, 1, 1, 5, 5, 5])).verdict is Stability.STRICTLY_POLYSTABLE
    octic = BinaryForm.from_linear_factors([(1, 0)] * 4 + [(0, 1)] * 4)
    assert binary_form_stability(octic).verdict is Stability.STRICTLY_POLYSTABLE
    quintic = BinaryForm.from_linear_factors([(1, 0)] * 3 + [(1, 1), (1, 2)])
    assert binary_form_stability(quintic).verdict is Stability.UNSTABLE


def test_nodal_quartic_pencil():
    A = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    B = [[1, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 2, 0], [0, 0, 0, 0, 5]]
    p = QuadricPencil(5, A, B)
    assert multiplicity_profile(discriminant_form(p)).multiplicities() == [3, 1, 1]
    assert not pencil_stability(p).verdict.polystable


def test_degenerate_pencil():
    Z = [[0] * 3 for _ in range(3)]
    with pytest.raises(DegeneratePencil):
        QuadricPencil(3, [[1, 0, 0], [0, 0, 0], [0, 0, 0]], Z)
    p = QuadricPencil(3, [[1, 0, 0], [0, 0, 0], [0, 0, 0]], Z, strict=False)
    v = pencil_stability(p)
    assert v.verdict is Stability.UNSTABLE and "degenerate" in v.witness


def test_validation():
    with pytest.raises(ValueError):
        QuadricPencil(2, [[1, 2], [3, 1]], [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        QuadricPencil(3, [[1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert QuadricPencil(2, [["1/2", 0], [0, 1]], [[0, 1], [1, 0]]).A[0][0] == Fraction(1, 2)


def test_sl_equivariance():
    rng = random.Random(7)
    for trial in range(100):
        n = 5 if trial % 2 else 6
        p = random_pencil(rng, n)
        S = random_sl(rng, n)
        q = p.congruence(S)
        assert discriminant_form(q) == discriminant_form(p)
        assert pencil_stability(q).verdict is pencil_stability(p).verdict


def test_shear():
    rng = random.Random(11)
    for _ in range(30):
        p = random_pencil(rng, 5)
        t = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        B = [[p.B[i][j] + t * p.A[i][j] for j in range(5)] for i in range(5)]
        q = QuadricPencil(5, p.A, B)
        assert discriminant_form(q) == discriminant_form(p).shear(t)
        assert pencil_stability(q).verdict is pencil_stability(p).verdict


@settings(max_examples=150)
@given(factored_form(), rational(4).filter(bool))
def test_profile_round_trip_and_invariance(fe, c):
    f, expected = fe
    prof = multiplicity_profile(f)
    assert prof.multiplicities() == expected
    assert sum(p.multiplicity * p.degree for p in prof.parts) == f.degree
    v = binary_form_stability(f).verdict
    assert binary_form_stability(f.swap()).verdict is v
    assert binary_form_stability(f.scale(c)).verdict is v
    assert binary_form_stability(f.shear(c)).verdict is v


@settings(max_examples=100)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=8), st.integers(1, 3))
def test_squarefree_against_sympy(coeffs, e):
    p = polys.normalize(coeffs)
    if polys.degree(p) < 1:
        return
    p = polys.mul(polys.power(p, e), polys.derivative(p) or [Fraction(1)])
    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p])), x)
    expected = sorted((k, [Fraction(int(c.p), int(c.q)) for c in reversed((g.monic()).all_coeffs())])
                      for g, k in sympy.sqf_list(sp)[1])
    ours = sorted(polys.squarefree_decomposition(p))
    # sympy may split one level into several factors
    merged = {}
    for k, g in expected:
        merged[k] = polys.mul(merged.get(k, [Fraction(1)]), g)
    assert ours == sorted(merged.items())


def test_polys_basics():
    p = polys.normalize([-1, 0, 1])  # x^2 - 1, lowest degree first
    assert polys.evaluate(p, 3) == 8
    q, r = polys.divmod_poly(p, polys.normalize([-1, 1]))
    assert q == [1, 1] and r == []
    assert polys.gcd(p, polys.normalize([1, 1])) == [1, 1]
    assert polys.interpolate([0, 1, 2], [1, 2, 5]) == [1, 0, 1]
    with pytest.raises(ArithmeticError):
        polys.exact_div(p, polys.normalize([0, 2]) + [1])
