"""Independent oracles built on sympy, used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from imagemilnor.poly import Polynomial


def monomials_below(nvars: int, degree: int):
    """All exponent tuples of total degree < degree."""
    out = []
    for d in range(degree):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            mono = [0] * nvars
            for i in combo:
                mono[i] += 1
            out.append(tuple(mono))
    return out


def _qq(c) -> object:
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def macaulay_dimension(gens: Sequence[Polynomial], degree: int) -> int:
    """dim Q[x] / (I + m^degree) by truncated Macaulay-matrix rank.

    For an ideal whose local quotient has length delta this equals delta as
    soon as degree >= delta.
    """
    nvars = len(gens[0].variables) if gens else 0
    cols = monomials_below(nvars, degree)
    index = {m: i for i, m in enumerate(cols)}
    rows: List[List] = []
    for g in gens:
        terms = list(g.items())
        for shift in cols:
            row = [QQ(0)] * len(cols)
            touched = False
            for mono, c in terms:
                mm = tuple(a + b for a, b in zip(mono, shift))
                j = index.get(mm)
                if j is not None:
                    row[j] += _qq(c)
                    touched = True
            if touched:
                rows.append(row)
    if not rows:
        return len(cols)
    rank = DomainMatrix(rows, (len(rows), len(cols)), QQ).rank()
    return len(cols) - rank


def to_sympy(p: Polynomial, symbols: Dict[str, sympy.Symbol]):
    expr = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for v, e in zip(p.variables, mono):
            term *= symbols[v] ** e
        expr += term
    return expr


def vandermonde_quotient(values: Sequence[Fraction], nodes: Sequence[Fraction], i: int) -> Fraction:
    """Cramer's rule: replace column i of the Vandermonde matrix by the values."""
    k = len(nodes)
    base = sympy.Matrix(k, k, lambda r, c: sympy.Rational(nodes[r]) ** c)
    num = base.copy()
    for r in range(k):
        num[r, i] = sympy.Rational(values[r])
    q = num.det() / base.det()
    return Fraction(int(q.p), int(q.q))


def complete_homogeneous(ys: Sequence[Polynomial], degree: int) -> Polynomial:
    amb = ys[0].variables
    if degree < 0:
        return Polynomial.zero(amb)
    total = Polynomial.zero(amb)
    for combo in itertools.combinations_with_replacement(range(len(ys)), degree):
        term = Polynomial.constant(amb, 1)
        for i in combo:
            term = term * ys[i]
        total = total + term
    return total


def elementary_symmetric(ys: Sequence[Polynomial], degree: int) -> Polynomial:
    amb = ys[0].variables
    total = Polynomial.zero(amb)
    for combo in itertools.combinations(range(len(ys)), degree):
        term = Polynomial.constant(amb, 1)
        for i in combo:
            term = term * ys[i]
        total = total + term
    return total
