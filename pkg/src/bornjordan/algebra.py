"""Exact arithmetic in the Weyl algebra generated by ``q`` and ``p``.

Words are plain strings over the letters ``"q"`` and ``"p"``; the empty
string is the identity.  Coefficients are :class:`Scalar` values, i.e.
polynomials in hbar with Gaussian-rational coefficients.  Multiplication is
free (words concatenate); :func:`normal_form` applies the relation
``pq = qp - i*hbar`` until every ``q`` stands to the left of every ``p``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Mapping, Union

Q = "q"
P = "p"
LETTERS = (Q, P)


class Gaussian:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Gaussian(other)
        if not isinstance(other, Gaussian):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other: Gaussian) -> Gaussian:
        return Gaussian(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Gaussian) -> Gaussian:
        return Gaussian(self.re - other.re, self.im - other.im)

    def __neg__(self) -> Gaussian:
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other: Gaussian) -> Gaussian:
        return Gaussian(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def conjugate(self) -> Gaussian:
        return Gaussian(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"Gaussian({self.re}, {self.im})"


class Scalar:
    """Polynomial in hbar with Gaussian-rational coefficients.

    Stored sparsely as ``{hbar_exponent: Gaussian}`` with no zero entries, so
    the zero scalar is the empty map and structural equality is value
    equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Gaussian | Rational | int] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            if not isinstance(c, Gaussian):
                c = Gaussian(c)
            if k < 0:
                raise ValueError(f"negative hbar exponent {k}")
            if c:
                clean[int(k)] = c
        self._terms = clean

    @classmethod
    def coerce(cls, value: ScalarLike) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Gaussian):
            return cls({0: value})
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise TypeError(f"cannot use {value!r} as an exact coefficient")
        return cls({0: Gaussian(value)})

    @property
    def terms(self) -> dict[int, Gaussian]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: ScalarLike) -> Scalar:
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> Scalar:
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> Scalar:
        return Scalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> Scalar:
        other = _try_scalar(other)
        if other is None:
            return NotImplemented
        out: dict[int, Gaussian] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return Scalar(out)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        """Complex conjugate; hbar is real so its powers are untouched."""
        return Scalar({k: c.conjugate() for k, c in self._terms.items()})

    def evaluate(self, hbar: float) -> complex:
        return sum((complex(c) * hbar**k for k, c in self._terms.items()), 0j)

    def is_real_rational(self) -> bool:
        """True when the value is a real rational with no hbar dependence."""
        return all(k == 0 and not c.im for k, c in self._terms.items())

    def __repr__(self) -> str:
        return f"Scalar({format_poly(NCPoly({'': self}))})"


def _try_scalar(value) -> Scalar | None:
    try:
        return Scalar.coerce(value)
    except TypeError:
        return None


ScalarLike = Union[Scalar, Gaussian, Rational, int]

HBAR = Scalar({1: 1})
I = Scalar({0: Gaussian(0, 1)})
MINUS_I_HBAR = Scalar({1: Gaussian(0, -1)})


class NCPoly:
    """Noncommutative polynomial in ``q`` and ``p`` with :class:`Scalar` coefficients.

    Values are immutable.  ``==`` compares the canonical term maps, so two
    polynomials that are equal only modulo the commutation relation compare
    unequal; use :func:`equals` for operator equality.

    Example:
        >>> a = NCPoly.word("pq")
        >>> print(normal_form(a))
        q*p - i*hbar
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, ScalarLike] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            if any(ch not in LETTERS for ch in w):
                raise ValueError(f"word {w!r} uses letters outside {LETTERS}")
            c = Scalar.coerce(c)
            if c:
                clean[w] = clean[w] + c if w in clean else c
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def word(cls, w: str, coeff: ScalarLike = 1) -> NCPoly:
        return cls({w: coeff})

    @classmethod
    def scalar(cls, c: ScalarLike) -> NCPoly:
        return cls({"": c})

    @classmethod
    def zero(cls) -> NCPoly:
        return cls()

    @classmethod
    def one(cls) -> NCPoly:
        return cls({"": 1})

    @property
    def terms(self) -> dict[str, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[str, Scalar]]:
        return iter(self._terms.items())

    def words(self) -> list[str]:
        return list(self._terms)

    def coefficient(self, w: str) -> Scalar:
        return self._terms.get(w, Scalar())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Longest word length (``-1`` for zero)."""
        return max((len(w) for w in self._terms), default=-1)

    def is_standard(self) -> bool:
        return all(is_standard_word(w) for w in self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.scalar(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> NCPoly:
        other = _coerce_poly(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> NCPoly:
        return self + (-_coerce_poly(other))

    def __rsub__(self, other) -> NCPoly:
        return _coerce_poly(other) - self

    def __mul__(self, other) -> NCPoly:
        return mul(self, _coerce_poly(other))

    def __rmul__(self, other) -> NCPoly:
        return mul(_coerce_poly(other), self)

    def __pow__(self, n: int) -> NCPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are defined")
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"NCPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce_poly(x) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    return NCPoly.scalar(x)


q = NCPoly.word(Q)
p = NCPoly.word(P)


def is_standard_word(w: str) -> bool:
    """True if no ``p`` precedes a ``q`` in ``w``."""
    return "pq" not in w


def mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Free product: words concatenate, coefficients multiply, nothing is rewritten."""
    out: dict[str, Scalar] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            c = c1 * c2
            out[w] = out[w] + c if w in out else c
    return NCPoly(out)


@lru_cache(maxsize=None)
def _word_normal_form(w: str) -> tuple[tuple[str, Scalar], ...]:
    # Built letter by letter from the right-multiplication rule
    #   q^a p^b * q = q^(a+1) p^b - i*hbar*b q^a p^(b-1),
    # which is the rewrite pq -> qp - i*hbar applied to exhaustion.
    if not w:
        return (("", Scalar({0: 1})),)
    head, last = w[:-1], w[-1]
    acc: dict[tuple[int, int], Scalar] = {}

    def bump(key, c):
        acc[key] = acc[key] + c if key in acc else c

    for word, c in _word_normal_form(head):
        a = word.count(Q)
        b = len(word) - a
        if last == P:
            bump((a, b + 1), c)
        else:
            bump((a + 1, b), c)
            if b:
                bump((a, b - 1), c * MINUS_I_HBAR * b)
    return tuple((Q * a + P * b, c) for (a, b), c in acc.items() if c)


def normal_form(a: NCPoly) -> NCPoly:
    """Standard-ordered (all ``q`` before all ``p``) representative of ``a``.

    The result equals ``a`` modulo ``pq - qp = -i*hbar`` and is a fixed point
    of this function.
    """
    out: dict[str, Scalar] = {}
    for w, c in a.items():
        if is_standard_word(w):
            out[w] = out[w] + c if w in out else c
            continue
        for sw, sc in _word_normal_form(w):
            v = c * sc
            out[sw] = out[sw] + v if sw in out else v
    return NCPoly(out)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """``[a, b] = ab - ba`` in normal form."""
    return normal_form(mul(a, b) - mul(b, a))


def cyclic_derivative(a: NCPoly, var: str) -> NCPoly:
    """Cyclic derivative with respect to the letter ``var``.

    Each occurrence of ``var`` in a word ``w = u var v`` contributes the
    rotated word ``v u``.  The result is not reduced; it depends on the
    representative of ``a``, not only on the operator it denotes.
    """
    if var not in LETTERS:
        raise ValueError(f"unknown variable {var!r}")
    out: dict[str, Scalar] = {}
    for w, c in a.items():
        for k, ch in enumerate(w):
            if ch == var:
                r = w[k + 1:] + w[:k]
                out[r] = out[r] + c if r in out else c
    return NCPoly(out)


def formal_adjoint(a: NCPoly) -> NCPoly:
    """Reverse every word and conjugate every coefficient (q, p self-adjoint)."""
    return NCPoly({w[::-1]: c.conjugate() for w, c in a.items()})


def equals(a: NCPoly, b: NCPoly) -> bool:
    """Operator equality: identical normal forms."""
    return normal_form(a) == normal_form(b)


def is_central(a: NCPoly) -> bool:
    """True iff ``a`` is a scalar multiple of the identity as an operator."""
    return all(w == "" for w in normal_form(a).words())


def leading_part(a: NCPoly) -> NCPoly:
    """hbar-free part of the normal form (the classical symbol in standard order)."""
    out = {}
    for w, c in normal_form(a).items():
        c0 = c.terms.get(0)
        if c0:
            out[w] = c0
    return NCPoly(out)


# -- printing -----------------------------------------------------------------

def _word_factors(w: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        out.append(w[i] if n == 1 else f"{w[i]}^{n}")
        i = j
    return out


def _word_key(w: str) -> tuple:
    # Higher q-degree first, then higher p-degree; ties broken by the word.
    nq = w.count(Q)
    return (-nq, -(len(w) - nq), w)


def format_poly(a: NCPoly) -> str:
    """Render ``a`` as parser-compatible text with a stable term order.

    Words are ordered by q-degree then p-degree (descending), hbar powers
    ascending within a word, real parts before imaginary parts.
    """
    pieces: list[tuple[bool, str]] = []
    for w in sorted(a.words(), key=_word_key):
        for k, c in a.coefficient(w).items():
            for value, imag in ((c.re, False), (c.im, True)):
                if not value:
                    continue
                factors = []
                mag = abs(value)
                if mag != 1:
                    factors.append(str(mag))
                if imag:
                    factors.append("i")
                if k == 1:
                    factors.append("hbar")
                elif k > 1:
                    factors.append(f"hbar^{k}")
                factors.extend(_word_factors(w))
                pieces.append((value < 0, "*".join(factors) or "1"))
    if not pieces:
        return "0"
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
