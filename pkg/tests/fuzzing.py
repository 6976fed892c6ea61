"""Deterministic random inputs for parser fuzzing and round-trip checks."""

import random
from fractions import Fraction

from bornjordan.algebra import HBAR, I, NCPoly, Scalar

PIECES = ["p", "q", "hbar", "i", "1", "2", "3/4", "0", "(", ")", "+", "-", "*", "^", "^2",
          " ", "/", "//", "x", "pq", "1/0", "^-1", "**", "é", "\t", "12345678901234567890"]


def grammar_adjacent(rng: random.Random, max_pieces: int = 12) -> str:
    return "".join(rng.choice(PIECES) for _ in range(rng.randint(0, max_pieces)))


def random_bytes(rng: random.Random, max_len: int = 24) -> str:
    raw = bytes(rng.randrange(256) for _ in range(rng.randint(0, max_len)))
    return raw.decode("latin-1")


def random_scalar(rng: random.Random) -> Scalar:
    out = Scalar.coerce(0)
    for k in range(rng.randint(0, 2) + 1):
        re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        im = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        out = out + (Scalar.coerce(re) + I * im) * _hbar_power(k)
    return out


def _hbar_power(k: int) -> Scalar:
    out = Scalar.coerce(1)
    for _ in range(k):
        out = out * HBAR
    return out


def random_ncpoly(rng: random.Random, max_terms: int = 4, max_len: int = 5) -> NCPoly:
    out = NCPoly.zero()
    for _ in range(rng.randint(0, max_terms)):
        w = "".join(rng.choice("qp") for _ in range(rng.randint(0, max_len)))
        out = out + NCPoly.word(w, random_scalar(rng))
    return out
