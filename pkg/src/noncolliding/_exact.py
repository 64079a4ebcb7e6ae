"""Exact rational polynomials and determinants.

Polynomials are plain lists of ``Fraction`` coefficients, lowest power first.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction], index = power


def trim(p: Poly) -> Poly:
    q = list(p)
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q or [Fraction(0)]


def padd(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def pscale(p: Sequence, c) -> Poly:
    return trim([Fraction(a) * c for a in p])


def pmul(p: Sequence, q: Sequence) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def peval(p: Sequence, x):
    """Horner evaluation; exact when ``x`` is an int or Fraction."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pcompose_affine(p: Sequence, a, b) -> Poly:
    """Coefficients of ``p(a*x + b)``."""
    lin = [Fraction(b), Fraction(a)]
    out = [Fraction(0)]
    for c in reversed(p):
        out = padd(pmul(out, lin), [c])
    return out


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Entries may be ints or Fractions; the result is an exact Fraction.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = akk
    return sign * a[n - 1][n - 1]
