"""Dense univariate polynomials over Q.

A polynomial is a list of :class:`Fraction` coefficients, lowest degree
first, with no trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list


def normalize(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Poly) -> int:
    return len(p) - 1


def monic(p: Poly) -> Poly:
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def power(p: Poly, e: int) -> Poly:
    out = [Fraction(1)]
    for _ in range(e):
        out = mul(out, p)
    return out


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = normalize(r)
    return normalize(quot), r


def exact_div(p: Poly, q: Poly) -> Poly:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("division is not exact")
    return quot


def gcd(p: Poly, q: Poly) -> Poly:
    a, b = normalize(p), normalize(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p: Poly) -> Poly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def squarefree_decomposition(p: Poly) -> list[tuple[int, Poly]]:
    """Yun's algorithm: p = c * prod f_i^i with f_i squarefree, pairwise coprime.

    Returns [(i, monic f_i)] for the nonconstant f_i.
    """
    p = normalize(p)
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if degree(p) == 0:
        return []
    out = []
    a = gcd(p, derivative(p))
    b = exact_div(p, a)
    c = exact_div(derivative(p), a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        g = gcd(b, d)
        if degree(g) > 0:
            out.append((i, g))
        b = exact_div(b, g)
        c = exact_div(d, g)
        d = sub(c, derivative(b))
        i += 1
    return out


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Lagrange interpolation through distinct nodes."""
    result: Poly = []
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        term = [c * Fraction(ys[i]) / denom for c in basis]
        result = sub(result, [-c for c in term])
    return result
