"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import random
import time
import warnings
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

import pytest

from conftest import fano_polygons
from fanolab.classify import (
    CompletenessWarning,
    EnumerationConfig,
    classify_rank1,
    enumerate_ldp,
    filter_surfaces,
    verify_y_family,
)
from fanolab.cli import main
from fanolab.ke import bishop_gromov_surface, obstruction_rhs
from fanolab.lattice import CyclicQuotientType
from fanolab.pencil import Stability, diagonal_pencil, discriminant_form, pencil_stability
from fanolab.polytope import (
    degree,
    degree_edge_formula,
    dual,
    ehrhart_count,
    rank1_triangle,
    summarize,
    weighted_p11n,
    y_family,
)
from fanolab.report import obstruct3
from fanolab.singularities import (
    classify_edges,
    discrepancy,
    hilbert_samuel_multiplicity,
    is_t_singularity,
    mumford_instability,
)


@contextmanager
def criterion(capsys, number: int, title: str, limit: float):
    """Time the block, enforce the runtime limit and print one verdict line."""
    start = time.perf_counter()
    error = None
    try:
        yield
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    if error is None and elapsed >= limit:
        error = AssertionError(f"runtime {elapsed:.2f}s exceeds {limit}s")
    status = "PASS" if error is None else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number} [{status}] {title} ({elapsed:.2f}s, limit {limit}s)"
              + ("" if error is None else f": {error}"))
    if error is not None:
        raise error


def test_criterion_1_rank_one(capsys):
    with criterion(capsys, 1, "rank-one classification: 3 classes, degrees 9/3/1", 1.0):
        code = main(["classify-rank1"])
        out = capsys.readouterr().out
        assert code == 0 and out.splitlines()[0] == "3 classes"
        classes = classify_rank1()
        got = [(s.degree, Counter(s.singularities.labels())) for s in classes]
        assert got == [
            (9, Counter()),
            (3, Counter({"A_2": 3})),
            (1, Counter({"A_8": 1, "(1,3,1)": 2})),
        ]


def test_criterion_2_seven_entries(capsys):
    with criterion(capsys, 2, "index <= 3 KE + T filter gives the 7-entry table", 600.0):
        t0 = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("error", CompletenessWarning)
            idx1 = enumerate_ldp(EnumerationConfig(1, stabilization_check=True))
            idx2 = enumerate_ldp(EnumerationConfig(2, stabilization_check=True))
            assert time.perf_counter() - t0 < 60
            idx3 = enumerate_ldp(EnumerationConfig(3, stabilization_check=True))
        assert len(idx1) == 16
        assert len(filter_surfaces(idx1, barycenter_zero=True, all_t=True)) == 5
        assert len(idx2) == 46
        seven = filter_surfaces(idx3, barycenter_zero=True, all_t=True)
        pairs = sorted(((s.degree, s.summary.picard_rank) for s in seven), reverse=True)
        assert pairs == [(9, 1), (8, 2), (6, 4), (4, 2), (3, 1), (2, 2), (1, 1)]
        code = main(["enumerate", "--max-index", "1"])
        assert code == 0
        assert capsys.readouterr().out.splitlines()[0] == "16 classes, 5 barycenter-zero"


def test_criterion_3_y_family(capsys):
    with criterion(capsys, 3, "Y_n, n = 1..20", 1.0):
        assert verify_y_family(20).ok
        for n in range(1, 21):
            P = y_family(n)
            s = summarize(P)
            rep = classify_edges(P)
            assert s.degree == Fraction(4, n) and s.barycenter == (0, 0)
            assert rep.min_discrepancy == Fraction(1, n) - 1
            expected = Counter({CyclicQuotientType.of(2 * n, 1): 2})
            expected[CyclicQuotientType.of(2 * n, 2 * n - 1)] += 2  # same as the first when n = 1
            assert Counter(e.type for e in rep.singular) == expected
            assert mumford_instability(rep) == (n >= 4)


def test_criterion_4_degree_cross_validation(capsys):
    with criterion(capsys, 4, "dual volume = edge formula on 10^4 random polygons", 30.0):
        polygons = fano_polygons(10_000, seed=2024, radius=6)
        bad = [P for P in polygons if degree(P) != degree_edge_formula(P)]
        assert not bad, f"{len(bad)} discrepancies, first {bad[0].vertices}"


def test_criterion_5_obstruction_constants(capsys):
    with criterion(capsys, 5, "obstruction constants and X_d verdicts", 1.0):
        assert [obstruction_rhs(n) for n in range(1, 5)] == [2, 12, 100, Fraction(5488, 5)]
        assert obstruct3(1).verdict.value == "consistent"
        for d in range(2, 51):
            assert obstruct3(d).verdict.value == "obstructed", d


@pytest.fixture(scope="module")
def ke_classes():
    return enumerate_ldp(EnumerationConfig(3), barycenter_zero=True)


def test_criterion_6_bishop_surface_bound(capsys, ke_classes):
    with criterion(capsys, 6, "Bishop bound: P(1,1,n) obstructed, KE classes consistent", 1.0):
        for n in range(2, 101):
            P = weighted_p11n(n)
            rep = classify_edges(P)
            assert bishop_gromov_surface(rep.gamma_max, degree(P)).value == "obstructed", n
        assert len(ke_classes) == 10
        for s in ke_classes:
            assert bishop_gromov_surface(s.singularities.gamma_max, s.degree).value == "consistent"


def test_criterion_7_ehrhart_hilbert(capsys):
    with criterion(capsys, 7, "Ehrhart count = Hilbert polynomial on 16 reflexive classes", 5.0):
        reflexive = enumerate_ldp(EnumerationConfig(1))
        assert len(reflexive) == 16
        for s in reflexive:
            Q = dual(s.polytope)
            for k in range(6):
                assert ehrhart_count(Q, k) == Fraction(k * (k + 1), 2) * s.degree + 1
        assert ehrhart_count(dual(rank1_triangle(9, 2)), 3) == 7


def _multiset_verdict(values):
    mults = sorted(Counter(values).values(), reverse=True)
    if mults[0] == 1:
        return Stability.STABLE
    if mults[0] == 2 or (len(values) == 6 and mults == [3, 3]):
        return Stability.STRICTLY_POLYSTABLE
    return Stability.UNSTABLE


def test_criterion_8_pencil_dictionary(capsys):
    with criterion(capsys, 8, "pencil GIT dictionary and SL-equivariance", 10.0):
        pool = (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3))
        checked = 0
        for size in (5, 6):
            for values in combinations_with_replacement(pool, size):
                assert pencil_stability(diagonal_pencil(values)).verdict is _multiset_verdict(values)
                checked += 1
        assert checked == 140
        rng = random.Random(5)
        for trial in range(100):
            size = 5 + trial % 2
            values = [rng.choice(pool) for _ in range(size)]
            p = diagonal_pencil(values)
            # S = unit lower triangular times unit upper triangular, det 1
            L = [[Fraction(int(i == j)) if i <= j else Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                  for j in range(size)] for i in range(size)]
            U = [[Fraction(int(i == j)) if i >= j else Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                  for j in range(size)] for i in range(size)]
            S = [[sum(L[i][k] * U[k][j] for k in range(size)) for j in range(size)] for i in range(size)]
            q = p.congruence(S)
            assert discriminant_form(q) == discriminant_form(p)
            assert pencil_stability(q).verdict is pencil_stability(p).verdict


def _t_table(limit):
    table = {CyclicQuotientType.of(m, m - 1) for m in range(2, limit + 1)}
    n = 2
    while n * n <= limit:
        for d in range(1, limit // (n * n) + 1):
            for a in range(1, n):
                if gcd(n, a) == 1:
                    table.add(CyclicQuotientType.of(d * n * n, d * n * a - 1))
        n += 1
    return table


def test_criterion_9_singularity_suite(capsys):
    with criterion(capsys, 9, "discrepancies, T-witnesses to m = 1000, multiplicities", 60.0):
        for k in range(1, 21):
            assert discrepancy(CyclicQuotientType.of(k + 1, k)) == 0
        for n in range(2, 51):
            assert discrepancy(CyclicQuotientType.of(n, 1)) == Fraction(2, n) - 1
        table = _t_table(1000)
        for m in range(2, 1001):
            for q in range(1, m):
                if gcd(m, q) != 1:
                    continue
                t = CyclicQuotientType.of(m, q)
                if t.q == q:
                    assert (is_t_singularity(t) is not None) == (t in table), t
        for k in range(1, 11):
            assert hilbert_samuel_multiplicity(k + 1, k) == 2
        for d in range(2, 11):
            assert hilbert_samuel_multiplicity(d, 1) == d
