import random
from fractions import Fraction

import pytest
import sympy as sp

from bornjordan.linsolve import InconsistentSystemError, matvec, row_echelon, solve_affine


def random_system(rng, rows, cols, rank):
    basis = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
             for _ in range(rank)]
    A = []
    for _ in range(rows):
        mix = [rng.randint(-2, 2) for _ in range(rank)]
        A.append([sum((m * b[j] for m, b in zip(mix, basis)), Fraction(0)) for j in range(cols)])
    x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)]
    return A, matvec(A, x)


@pytest.mark.parametrize("seed", range(25))
def test_against_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 7), rng.randint(1, 7)
    A, b = random_system(rng, rows, cols, rng.randint(0, min(rows, cols)))
    particular, basis = solve_affine(A, b)
    assert matvec(A, particular) == b
    for v in basis:
        assert not any(matvec(A, v))
    M = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in A])
    assert len(basis) == len(M.nullspace())
    assert len(row_echelon(A)[1]) == M.rank()


def test_unique_solution():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(-1)]]
    b = [Fraction(3), Fraction(0)]
    assert solve_affine(A, b) == ([1, 1], [])


def test_inconsistent():
    A = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    with pytest.raises(InconsistentSystemError):
        solve_affine(A, [Fraction(1), Fraction(3)])


def test_echelon_rows_are_primitive_integers():
    rows, pivots = row_echelon([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1)]])
    assert pivots == [0, 1]
    assert all(isinstance(x, int) for row in rows for x in row)
