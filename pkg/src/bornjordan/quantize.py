"""Quantization rules taking commutative polynomials in (p, q) to operators.

Every rule is defined on monomials ``p^s q^r`` and extended linearly.  The
operators returned are *not* reduced: each rule yields its own sum of words,
and callers apply :func:`~bornjordan.algebra.normal_form` when they want the
canonical representative.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from numbers import Rational
from typing import Callable, Iterator, Mapping, NamedTuple, Union

from .algebra import P, Q, NCPoly

DEFAULT_ORDERING_BOUND = 12

RULES = ("bj", "weyl", "standard", "antistandard", "average")


class ExpansionSizeError(ValueError):
    """Raised when an all-orderings expansion would exceed the degree bound."""


class Monomial(NamedTuple):
    """Classical monomial ``p^s q^r``."""

    s: int
    r: int

    @property
    def degree(self) -> int:
        return self.s + self.r

    def __str__(self) -> str:
        parts = []
        for letter, n in ((P, self.s), (Q, self.r)):
            if n == 1:
                parts.append(letter)
            elif n > 1:
                parts.append(f"{letter}^{n}")
        return "*".join(parts) or "1"


class ClassicalPoly:
    """Commutative polynomial in p and q with rational coefficients.

    Stored as ``{Monomial: Fraction}`` without zero entries.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Rational | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for key, c in (terms or {}).items():
            m = Monomial(*key)
            if m.s < 0 or m.r < 0:
                raise ValueError(f"negative power in {key}")
            clean[m] = clean.get(m, Fraction(0)) + Fraction(c)
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def monomial(cls, s: int, r: int, coeff: Rational | int = 1) -> ClassicalPoly:
        return cls({(s, r): coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Monomial):
            other = as_classical(other)
        if not isinstance(other, ClassicalPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: ClassicalPoly) -> ClassicalPoly:
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return ClassicalPoly(out)

    def __neg__(self) -> ClassicalPoly:
        return ClassicalPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: ClassicalPoly) -> ClassicalPoly:
        return self + (-other)

    def __mul__(self, other) -> ClassicalPoly:
        if isinstance(other, ClassicalPoly):
            out: dict[tuple[int, int], Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    key = (m1.s + m2.s, m1.r + m2.r)
                    out[key] = out.get(key, 0) + c1 * c2
            return ClassicalPoly(out)
        if isinstance(other, Rational):
            return ClassicalPoly({m: c * other for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ClassicalPoly:
        out = ClassicalPoly.monomial(0, 0)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for m, c in sorted(self._terms.items(), key=lambda t: (-t[0].degree, -t[0].s)):
            mag = abs(c)
            body = str(m) if mag == 1 else (f"{mag}" if m == (0, 0) else f"{mag}*{m}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"ClassicalPoly({str(self)!r})"


ClassicalLike = Union[ClassicalPoly, Monomial, tuple]


def as_classical(h: ClassicalLike) -> ClassicalPoly:
    if isinstance(h, ClassicalPoly):
        return h
    return ClassicalPoly.monomial(*h)


def _linear(rule: Callable[[int, int], Mapping[str, Fraction]]):
    def apply(h: ClassicalLike) -> NCPoly:
        out: dict[str, Fraction] = {}
        for (s, r), c in as_classical(h).items():
            for w, weight in rule(s, r).items():
                out[w] = out.get(w, 0) + c * weight
        return NCPoly(out)

    apply.__name__ = rule.__name__.lstrip("_")
    apply.__doc__ = rule.__doc__
    return apply


def _accumulate(pairs) -> dict[str, Fraction]:
    # Distinct split points can give the same word (e.g. when r = 0).
    out: dict[str, Fraction] = {}
    for w, c in pairs:
        out[w] = out.get(w, 0) + c
    return out


def _bj_words(s: int, r: int) -> dict[str, Fraction]:
    weight = Fraction(1, s + 1)
    return _accumulate((P * (s - l) + Q * r + P * l, weight) for l in range(s + 1))


def _bj_words_qsplit(s: int, r: int) -> dict[str, Fraction]:
    weight = Fraction(1, r + 1)
    return _accumulate((Q * (r - j) + P * s + Q * j, weight) for j in range(r + 1))


def _weyl_words(s: int, r: int) -> dict[str, Fraction]:
    return _accumulate((P * (s - l) + Q * r + P * l, Fraction(comb(s, l), 2**s))
                       for l in range(s + 1))


bj_quantize = _linear(_bj_words)
bj_quantize.__doc__ = """Born-Jordan rule: ``p^s q^r -> 1/(s+1) * sum_l p^(s-l) q^r p^l``."""

bj_quantize_qsplit = _linear(_bj_words_qsplit)
bj_quantize_qsplit.__doc__ = """Born-Jordan rule written with the q-power split:
``p^s q^r -> 1/(r+1) * sum_j q^(r-j) p^s q^j``.  Equal to :func:`bj_quantize`
as an operator, not as a word sum."""

weyl_quantize = _linear(_weyl_words)
weyl_quantize.__doc__ = """Weyl rule: ``p^s q^r -> 2^-s * sum_l C(s, l) p^(s-l) q^r p^l``."""


def ordering_quantize(h: ClassicalLike, side: str) -> NCPoly:
    """One-sided orderings: ``standard`` gives ``q^r p^s``, ``antistandard`` gives ``p^s q^r``."""
    if side == "standard":
        return _linear(lambda s, r: {Q * r + P * s: Fraction(1)})(h)
    if side == "antistandard":
        return _linear(lambda s, r: {P * s + Q * r: Fraction(1)})(h)
    raise ValueError(f"side must be 'standard' or 'antistandard', got {side!r}")


def all_orderings(s: int, r: int) -> list[str]:
    """Every distinct word with ``s`` p-letters and ``r`` q-letters, in lexicographic order."""
    n = s + r
    words = []
    for pos in combinations(range(n), s):
        letters = [Q] * n
        for i in pos:
            letters[i] = P
        words.append("".join(letters))
    return sorted(words)


def average_all_orderings(m: ClassicalLike, bound: int = DEFAULT_ORDERING_BOUND) -> NCPoly:
    """Uniform average over all orderings of the letters of ``p^s q^r``.

    Accepts a monomial or, by linearity, a polynomial.

    Raises:
        ExpansionSizeError: if any monomial has ``s + r > bound``.
    """
    out: dict[str, Fraction] = {}
    for (s, r), c in as_classical(m).items():
        if s + r > bound:
            raise ExpansionSizeError(
                f"p^{s} q^{r} has {comb(s + r, s)} orderings; degree {s + r} exceeds bound {bound}")
        words = all_orderings(s, r)
        weight = c / len(words)
        for w in words:
            out[w] = out.get(w, 0) + weight
    return NCPoly(out)


def quantize(h: ClassicalLike, rule: str) -> NCPoly:
    """Dispatch to one of :data:`RULES`."""
    if rule == "bj":
        return bj_quantize(h)
    if rule == "weyl":
        return weyl_quantize(h)
    if rule in ("standard", "antistandard"):
        return ordering_quantize(h, rule)
    if rule == "average":
        return average_all_orderings(h)
    raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")


def classical_derivative(h: ClassicalLike, var: str) -> ClassicalPoly:
    """Partial derivative of a commutative polynomial with respect to ``"p"`` or ``"q"``."""
    if var not in (P, Q):
        raise ValueError(f"unknown variable {var!r}")
    out: dict[tuple[int, int], Fraction] = {}
    for (s, r), c in as_classical(h).items():
        if var == P and s:
            out[(s - 1, r)] = out.get((s - 1, r), 0) + c * s
        elif var == Q and r:
            out[(s, r - 1)] = out.get((s, r - 1), 0) + c * r
    return ClassicalPoly(out)
