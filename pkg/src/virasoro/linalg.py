"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`~fractions.Fraction`. Elimination is
fraction-free: rows are scaled to integers and combined by cross
multiplication, then divided by their content to keep entries small.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def _integer_row(row):
    lcm = 1
    for q in row:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in row]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero integer rows and their pivot columns.
    """
    work = [_integer_row([Fraction(q) for q in r]) for r in rows]
    work = [r for r in work if any(r)]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((r for r in range(top, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        p = work[top]
        for r in range(top + 1, len(work)):
            a = work[r][col]
            if a:
                row = [p[col] * work[r][k] - a * p[k] for k in range(ncols)]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                work[r] = [x // g for x in row] if g > 1 else row
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return [r for r in work[:top]], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``; each vector has a 1 in its free column."""
    ech, pivots = echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((ech[r][k] * x[k] for k in range(pc + 1, ncols) if ech[r][k]), Fraction(0))
            x[pc] = -s / ech[r][pc]
        basis.append(x)
    return basis


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    ncols = len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(ncols)]
        for i in range(len(a))
    ]


def matvec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((q * y for q, y in zip(row, x)), Fraction(0)) for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(a: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial ``det(t I - a)``, constant term first.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = matmul(a, m, n)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        m = am
    return coeffs
