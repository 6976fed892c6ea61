"""Exact solution of rational linear systems.

Elimination runs on integer rows (each row scaled to clear denominators and
kept primitive by dividing out its gcd), so no fractions appear until the
final back-substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


class InconsistentSystemError(ValueError):
    """The system ``A x = b`` has no solution."""


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    ints = [int(Fraction(x) * den) for x in row]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


def row_echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero echelon rows (primitive integer vectors) and the pivot
    column of each.
    """
    work = [_integer_row(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        top = work[rank]
        a = top[col]
        for i in range(rank + 1, len(work)):
            c = work[i][col]
            if c:
                work[i] = _primitive([a * x - c * y for x, y in zip(work[i], top)])
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def solve_affine(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
                 ) -> tuple[list[Fraction], list[list[Fraction]]]:
    """All solutions of ``A x = b`` over the rationals.

    Returns ``(particular, basis)``: one solution with every free variable
    set to zero, and a basis of the nullspace of ``A`` (one vector per free
    variable, with a 1 in that variable's slot).

    Raises:
        InconsistentSystemError: if no solution exists.
    """
    if len(A) != len(b):
        raise ValueError("A and b have different numbers of rows")
    n = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    echelon, pivots = row_echelon(aug)
    if pivots and pivots[-1] == n:
        raise InconsistentSystemError("system has no solution (pivot in the right-hand side)")

    # Back-substitution to reduced form, now over Fractions.
    rref = [[Fraction(x, row[col]) for x in row] for row, col in zip(echelon, pivots)]
    for i in range(len(rref) - 1, -1, -1):
        col = pivots[i]
        for j in range(i):
            c = rref[j][col]
            if c:
                rref[j] = [x - c * y for x, y in zip(rref[j], rref[i])]

    free = [j for j in range(n) if j not in set(pivots)]
    particular = [Fraction(0)] * n
    for row, col in zip(rref, pivots):
        particular[col] = row[n]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, col in zip(rref, pivots):
            v[col] = -row[f]
        basis.append(v)
    return particular, basis


def matvec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * v for a, v in zip(row, x)), Fraction(0)) for row in A]
