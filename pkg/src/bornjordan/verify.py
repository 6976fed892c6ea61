"""Exact checks of the matrix-mechanics identities and of the ordering problem.

Everything here is decided by comparing normal forms, so a check either holds
exactly or fails; there are no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .algebra import (MINUS_I_HBAR, NCPoly, P, Q, commutator, cyclic_derivative,
                      is_central, normal_form, p, q)
from .linsolve import InconsistentSystemError, matvec, solve_affine
from .quantize import ClassicalLike, Monomial, all_orderings, bj_quantize, quantize, weyl_quantize

DEFAULT_SOLVER_BOUND = 8
MAX_SCAN_BOUND = 12

I_HBAR = -MINUS_I_HBAR


class VerificationError(AssertionError):
    """An identity that must hold by construction failed."""


def eq7_sides(m: int, n: int) -> tuple[NCPoly, NCPoly]:
    """Normal forms of ``p^m q^n - q^n p^m`` and ``-i*hbar*m * sum_l q^(n-1-l) p^(m-1) q^l``."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    lhs = NCPoly({P * m + Q * n: 1, Q * n + P * m: -1})
    rhs = NCPoly.zero()
    for l in range(n):
        rhs = rhs + NCPoly.word(Q * (n - 1 - l) + P * (m - 1) + Q * l)
    rhs = NCPoly.scalar(MINUS_I_HBAR * m) * rhs
    return normal_form(lhs), normal_form(rhs)


def check_eq7(m: int, n: int) -> bool:
    lhs, rhs = eq7_sides(m, n)
    return lhs == rhs


def eq11_residuals(H: NCPoly) -> tuple[NCPoly, NCPoly]:
    """Normal forms of ``[H,q] + i*hbar*dH/dp`` and ``[H,p] - i*hbar*dH/dq`` (cyclic derivatives).

    Both vanish exactly when ``H`` conserves energy in the matrix-mechanics sense.
    """
    r_q = commutator(H, q) + normal_form(NCPoly.scalar(I_HBAR) * cyclic_derivative(H, P))
    r_p = commutator(H, p) - normal_form(NCPoly.scalar(I_HBAR) * cyclic_derivative(H, Q))
    return normal_form(r_q), normal_form(r_p)


def check_eq11(rule: str, m: ClassicalLike) -> tuple[bool, bool]:
    """Whether the quantization of ``m`` under ``rule`` satisfies both energy conditions.

    The first flag tests ``Hq - qH = -i*hbar dH/dp``, the second
    ``Hp - pH = i*hbar dH/dq``.  Derivatives are cyclic derivatives of the
    rule's own word sum.
    """
    r_q, r_p = eq11_residuals(quantize(m, rule))
    return not r_q, not r_p


# -- ordering solution space ----------------------------------------------------

@dataclass(frozen=True)
class OrderingVector:
    """Rational weights on the orderings of ``p^s q^r``; they sum to one."""

    monomial: Monomial
    weights: Mapping[str, Fraction]

    def __post_init__(self):
        s, r = self.monomial
        for w in self.weights:
            if w.count(P) != s or w.count(Q) != r:
                raise ValueError(f"word {w!r} is not an ordering of p^{s} q^{r}")
        if sum(self.weights.values(), Fraction(0)) != 1:
            raise ValueError("ordering weights must sum to 1")

    @classmethod
    def from_poly(cls, m: Monomial, poly: NCPoly) -> OrderingVector:
        """Read weights off an unreduced quantization of the monomial ``m``."""
        weights = {}
        for w, c in poly.items():
            if not c.is_real_rational():
                raise ValueError(f"coefficient of {w!r} is not a real rational")
            weights[w] = c.terms[0].re
        return cls(Monomial(*m), weights)

    def vector(self, words: list[str]) -> list[Fraction]:
        return [Fraction(self.weights.get(w, 0)) for w in words]

    def as_poly(self) -> NCPoly:
        return NCPoly(dict(self.weights))


@dataclass(frozen=True)
class SolutionSpace:
    """Every ordering vector satisfying normalization and both energy conditions.

    ``matrix``/``rhs`` hold the defining linear system over the columns
    ``words`` so membership can be re-checked independently of the solve.
    """

    monomial: Monomial
    words: tuple[str, ...]
    particular: OrderingVector
    nullspace_basis: tuple[dict[str, Fraction], ...]
    matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    rhs: tuple[Fraction, ...] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.nullspace_basis)

    def residual(self, weights: Mapping[str, Fraction]) -> list[Fraction]:
        x = [Fraction(weights.get(w, 0)) for w in self.words]
        return [a - b for a, b in zip(matvec(self.matrix, x), self.rhs)]

    def contains(self, v: OrderingVector | Mapping[str, Fraction]) -> bool:
        weights = v.weights if isinstance(v, OrderingVector) else v
        if any(w not in self.words for w in weights if weights[w]):
            return False
        return not any(self.residual(weights))

    def resubstitution_ok(self) -> bool:
        """Particular solution and particular + each basis vector satisfy the system exactly."""
        base = dict(self.particular.weights)
        if any(self.residual(base)):
            return False
        for v in self.nullspace_basis:
            shifted = {w: base.get(w, 0) + v.get(w, 0) for w in self.words}
            if any(self.residual(shifted)):
                return False
            if sum(v.values(), Fraction(0)) != 0:
                return False
        return True


def _coefficient_rows(polys: list[NCPoly]) -> Iterator[list[Fraction]]:
    # One row per (standard word, hbar power, real/imag part) over all columns.
    keys = set()
    for poly in polys:
        for w, c in poly.items():
            for k in c.terms:
                keys.add((w, k))
    for w, k in sorted(keys, key=lambda t: (len(t[0]), t[0], t[1])):
        coeffs = [poly.coefficient(w).terms.get(k) for poly in polys]
        re = [c.re if c else Fraction(0) for c in coeffs]
        im = [c.im if c else Fraction(0) for c in coeffs]
        if any(re):
            yield re
        if any(im):
            yield im


def eq11_system(m: ClassicalLike) -> tuple[list[str], list[list[Fraction]], list[Fraction]]:
    """Linear system on ordering weights: normalization plus both energy conditions."""
    s, r = Monomial(*m)
    words = all_orderings(s, r)
    per_word = [eq11_residuals(NCPoly.word(w)) for w in words]
    rows = [[Fraction(1)] * len(words)]
    rhs = [Fraction(1)]
    for which in (0, 1):
        for row in _coefficient_rows([res[which] for res in per_word]):
            rows.append(row)
            rhs.append(Fraction(0))
    return words, rows, rhs


def ordering_solution_space(m: ClassicalLike, bound: int = DEFAULT_SOLVER_BOUND) -> SolutionSpace:
    """Exact affine space of ordering weights satisfying both energy conditions.

    The uniform (all-orderings) vector is always a member; its absence would
    mean a bug here, and raises :class:`VerificationError`.

    Raises:
        ValueError: if ``s + r`` exceeds ``bound``.
        InconsistentSystemError: if the system has no solution.
    """
    m = Monomial(*m)
    if m.degree > bound:
        raise ValueError(f"degree {m.degree} exceeds solver bound {bound}")
    words, rows, rhs = eq11_system(m)
    particular, basis = solve_affine(rows, rhs)
    space = SolutionSpace(
        monomial=m,
        words=tuple(words),
        particular=OrderingVector(m, {w: c for w, c in zip(words, particular) if c}),
        nullspace_basis=tuple({w: c for w, c in zip(words, v) if c} for v in basis),
        matrix=tuple(tuple(row) for row in rows),
        rhs=tuple(rhs),
    )
    uniform = {w: Fraction(1, len(words)) for w in words}
    if not space.contains(uniform):
        raise VerificationError(f"uniform ordering vector of {m} missing from solution space")
    return space


def rule_vector(rule: str, m: ClassicalLike) -> OrderingVector:
    m = Monomial(*m)
    return OrderingVector.from_poly(m, quantize(m, rule))


# -- Born-Jordan versus Weyl ------------------------------------------------------

def bj_weyl_difference(m: ClassicalLike) -> NCPoly:
    """Normal form of ``BJ(m) - Weyl(m)``; pair with :func:`is_central`."""
    return normal_form(bj_quantize(m) - weyl_quantize(m))


def monomials_by_degree(bound: int) -> Iterator[Monomial]:
    """Monomials with ``s + r <= bound``, by total degree then ``s``."""
    for d in range(bound + 1):
        for s in range(d + 1):
            yield Monomial(s, d - s)


def smallest_noncentral_difference(bound: int) -> Monomial | None:
    """First monomial (degree, then s) whose BJ-Weyl difference is not central."""
    if bound < 1 or bound > MAX_SCAN_BOUND:
        raise ValueError(f"bound must be in 1..{MAX_SCAN_BOUND}, got {bound}")
    for m in monomials_by_degree(bound):
        if not is_central(bj_weyl_difference(m)):
            return m
    return None

