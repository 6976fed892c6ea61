"""Truncated Fock-basis matrices for q, p and polynomial operators in them."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import NCPoly, Q

DEFAULT_DIM = 64
NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MatrixOperator:
    """Dense ``dim x dim`` complex matrix standing for an operator, with the hbar it was built at."""

    entries: np.ndarray
    hbar: float

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> MatrixOperator:
        return MatrixOperator(self.entries.conj().T, self.hbar)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitude vector in the truncated Fock basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).ravel()
        if v.size < 1:
            raise ValueError("state must have at least one amplitude")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm is {norm!r}, expected 1 within {NORM_TOL}")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def normalized(cls, amplitudes) -> StateVector:
        v = np.asarray(amplitudes, dtype=complex)
        return cls(v / np.linalg.norm(v))

    @classmethod
    def fock_superposition(cls, N: int, modes=range(4)) -> StateVector:
        """Equal-weight superposition of the given Fock modes (default ``0..3``)."""
        v = np.zeros(N, dtype=complex)
        for n in modes:
            if n < N:
                v[n] = 1.0
        return cls.normalized(v)

    def tail_weight(self, fraction: float = 0.25) -> float:
        """Largest amplitude magnitude among the top ``fraction`` of modes."""
        k = max(1, int(np.ceil(self.dim * fraction)))
        return float(np.max(np.abs(self.amplitudes[-k:])))


def lowering(N: int) -> np.ndarray:
    """Annihilation matrix with ``a[n-1, n] = sqrt(n)``."""
    return np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1).astype(complex)


def fock_generators(N: int, hbar: float = 1.0) -> tuple[MatrixOperator, MatrixOperator]:
    """Truncated position and momentum matrices.

    ``q = sqrt(hbar/2) (a + a^dagger)`` and ``p = i sqrt(hbar/2) (a^dagger - a)``.
    Both are exactly Hermitian; their commutator is ``i*hbar`` times the
    identity except at the last diagonal entry, where it is ``i*hbar*(1 - N)``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    a = lowering(N)
    ad = a.conj().T
    scale = np.sqrt(hbar / 2.0)
    return MatrixOperator(scale * (a + ad), hbar), MatrixOperator(1j * scale * (ad - a), hbar)


def to_matrix(a: NCPoly, N: int = DEFAULT_DIM, hbar: float = 1.0) -> MatrixOperator:
    """Evaluate an operator polynomial on truncated generators, word by word.

    Each word is the product of the truncated ``q``/``p`` matrices in word
    order, so truncation errors sit in the last ``len(word)`` modes.
    """
    qm, pm = (g.entries for g in fock_generators(N, hbar))
    cache: dict[str, np.ndarray] = {"": np.eye(N, dtype=complex)}

    def word_matrix(w: str) -> np.ndarray:
        if w not in cache:
            cache[w] = word_matrix(w[:-1]) @ (qm if w[-1] == Q else pm)
        return cache[w]

    out = np.zeros((N, N), dtype=complex)
    for w, c in sorted(a.items()):
        out += c.evaluate(hbar) * word_matrix(w)
    return MatrixOperator(out, hbar)


def hermitize(H: MatrixOperator) -> tuple[MatrixOperator, float]:
    """Hermitian part ``(H + H^dagger)/2`` and the max-entry size of the anti-Hermitian part."""
    h = H.entries
    anti = (h - h.conj().T) / 2.0
    return MatrixOperator((h + h.conj().T) / 2.0, H.hbar), float(np.max(np.abs(anti)))


def matrix_rows(H: MatrixOperator) -> list[list[str]]:
    """Row-major ``"re,im"`` strings (repr precision, so values round-trip)."""
    return [[f"{float(z.real)!r},{float(z.imag)!r}" for z in row] for row in H.entries]


def dump_matrix(H: MatrixOperator, path: str | Path) -> None:
    """Write ``H`` as CSV (one cell per entry, ``"re,im"``) or JSON, chosen by file suffix."""
    path = Path(path)
    if path.suffix == ".json":
        payload = {"dim": H.dim, "hbar": H.hbar, "entries": matrix_rows(H)}
        path.write_text(json.dumps(payload, indent=1) + "\n")
    else:
        with path.open("w", newline="") as fh:
            csv.writer(fh).writerows(matrix_rows(H))


def load_matrix(path: str | Path, hbar: float = 1.0) -> MatrixOperator:
    path = Path(path)
    if path.suffix == ".json":
        payload = json.loads(path.read_text())
        rows, hbar = payload["entries"], payload["hbar"]
    else:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))

    def cell(s: str) -> complex:
        re, im = s.split(",")
        return complex(float(re), float(im))

    return MatrixOperator(np.array([[cell(s) for s in row] for row in rows]), hbar)
