"""Schrodinger- and Heisenberg-picture evolution on truncated Fock space.

All Hamiltonians are time independent, so propagators come from one Hermitian
eigendecomposition: ``U(t, t0) = V exp(-i E (t - t0) / hbar) V^dagger``.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .matrixrep import (DEFAULT_DIM, MatrixOperator, StateVector, fock_generators,
                        hermitize, to_matrix)
from .quantize import ClassicalLike, as_classical, bj_quantize, weyl_quantize

HERMITIAN_TOL = 1e-8
LOW_MODE_TOL = 1e-8

CSV_COLUMNS = ("t", "exp_bj_re", "exp_bj_im", "exp_weyl_re", "exp_weyl_im",
               "divergence", "energy_bj", "energy_weyl")


class NonHermitianError(ValueError):
    """Hamiltonian is too far from Hermitian to generate unitary evolution."""


class TruncationWarning(UserWarning):
    """State has weight near the truncation edge; results may depend on N."""


def _entries(x) -> np.ndarray:
    return x.entries if isinstance(x, MatrixOperator) else np.asarray(x, dtype=complex)


def _amplitudes(x) -> np.ndarray:
    return x.amplitudes if isinstance(x, StateVector) else np.asarray(x, dtype=complex)


def _check_dims(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise ValueError(f"dimension mismatch: {dims}")


@dataclass(frozen=True, eq=False)
class Propagator:
    """Unitary ``U(t, t0)``."""

    t0: float
    t: float
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def unitarity_error(self) -> float:
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(self.dim))))


class Evolution:
    """Cached spectral data of a Hermitian ``H``; hands out propagators and evolved states.

    Raises:
        NonHermitianError: if ``H`` deviates from Hermitian by more than ``tol``
            (max absolute entry of the anti-Hermitian part).
    """

    def __init__(self, H: MatrixOperator, tol: float = HERMITIAN_TOL):
        herm, deviation = hermitize(H)
        if deviation > tol:
            raise NonHermitianError(
                f"anti-Hermitian part has max entry {deviation:.3e} > {tol:.1e}; hermitize first")
        self.H = herm
        self.hbar = H.hbar
        self.deviation = deviation
        self.energies, self.vectors = np.linalg.eigh(herm.entries)

    @property
    def dim(self) -> int:
        return self.H.dim

    def _phases(self, dt: float) -> np.ndarray:
        return np.exp(-1j * self.energies * dt / self.hbar)

    def propagator(self, t0: float, t: float) -> Propagator:
        V = self.vectors
        return Propagator(t0, t, (V * self._phases(t - t0)) @ V.conj().T)

    def state(self, psi0, t: float, t0: float = 0.0) -> np.ndarray:
        V = self.vectors
        return V @ (self._phases(t - t0) * (V.conj().T @ _amplitudes(psi0)))


def propagator(H: MatrixOperator, t0: float, t: float) -> Propagator:
    """``U(t, t0) = exp(-i H (t - t0) / hbar)`` for Hermitian ``H``."""
    return Evolution(H).propagator(t0, t)


def schrodinger_evolve(psi0: StateVector, U: Propagator) -> StateVector:
    _check_dims(psi0.dim, U.dim)
    return StateVector(U.matrix @ psi0.amplitudes)


def heisenberg_observable(A: MatrixOperator, U: Propagator) -> MatrixOperator:
    """``A_H(t) = U^dagger A U``."""
    _check_dims(A.dim, U.dim)
    return MatrixOperator(U.matrix.conj().T @ A.entries @ U.matrix, A.hbar)


def expectation(psi, A) -> complex:
    v = _amplitudes(psi)
    return complex(np.vdot(v, _entries(A) @ v))


def _warn_if_high_modes(psi0: StateVector) -> bool:
    tail = psi0.tail_weight()
    if tail > LOW_MODE_TOL:
        warnings.warn(f"initial state has amplitude {tail:.2e} in the top quarter of modes",
                      TruncationWarning, stacklevel=3)
        return False
    return True


def picture_equivalence_check(psi0: StateVector, A: MatrixOperator, H: MatrixOperator,
                              t_grid: Sequence[float], t0: float = 0.0) -> float:
    """Max over ``t_grid`` of ``|<psi_S(t)|A|psi_S(t)> - <psi0|A_H(t)|psi0>|``.

    Emits :class:`TruncationWarning` when ``psi0`` is not supported on low modes.
    """
    _check_dims(psi0.dim, A.dim, H.dim)
    _warn_if_high_modes(psi0)
    evo = Evolution(H)
    worst = 0.0
    for t in t_grid:
        U = evo.propagator(t0, t)
        schrodinger = expectation(schrodinger_evolve(psi0, U), A)
        heisenberg = expectation(psi0, heisenberg_observable(A, U))
        worst = max(worst, abs(schrodinger - heisenberg))
    return worst


@dataclass(frozen=True)
class EOMReport:
    """Finite-difference residuals of ``dA_H/dt = (i/hbar)[H, A_H]``."""

    dt: tuple[float, ...]
    residuals: tuple[float, ...]
    slope: float
    ratios: tuple[float, ...]
    at_roundoff: bool

    def second_order(self, lo: float = 1.8, hi: float = 2.2) -> bool:
        return self.at_roundoff or lo <= self.slope <= hi


def heisenberg_eom_check(A: MatrixOperator, H: MatrixOperator, t: float,
                         dt_list: Sequence[float], roundoff: float = 1e-10) -> EOMReport:
    """Central-difference check of the Heisenberg equation at time ``t``.

    For each ``dt`` the residual is the max-entry norm of
    ``(A_H(t+dt) - A_H(t-dt)) / (2 dt) - (i/hbar) [H, A_H(t)]``; it should
    fall as ``dt**2``.  ``slope`` is the log-log least-squares fit.
    """
    dts = [float(d) for d in dt_list]
    if len(dts) < 2 or any(b >= a for a, b in zip(dts, dts[1:])):
        raise ValueError("dt_list must be strictly descending with at least two entries")
    _check_dims(A.dim, H.dim)
    evo = Evolution(H)
    h = evo.H.entries
    AH = heisenberg_observable(A, evo.propagator(0.0, t)).entries
    exact = (1j / evo.hbar) * (h @ AH - AH @ h)
    residuals = []
    for dt in dts:
        plus = heisenberg_observable(A, evo.propagator(0.0, t + dt)).entries
        minus = heisenberg_observable(A, evo.propagator(0.0, t - dt)).entries
        residuals.append(float(np.max(np.abs((plus - minus) / (2 * dt) - exact))))
    scale = max(1.0, float(np.max(np.abs(exact))))
    at_roundoff = max(residuals) <= roundoff * scale / min(dts)
    res = np.maximum(residuals, np.finfo(float).tiny)
    slope = float(np.polyfit(np.log(dts), np.log(res), 1)[0])
    ratios = tuple(float(a / b) if b else float("inf") for a, b in zip(res, res[1:]))
    return EOMReport(tuple(dts), tuple(residuals), slope, ratios, bool(at_roundoff))


def energy_series(H: MatrixOperator, psi0: StateVector, t_grid: Sequence[float]) -> np.ndarray:
    evo = Evolution(H)
    return np.array([expectation(evo.state(psi0, t), evo.H).real for t in t_grid])


def energy_drift(H: MatrixOperator, psi0: StateVector, t_grid: Sequence[float]) -> float:
    """Max ``|<H>(t) - <H>(t0)|`` relative to ``||H psi0||`` (never zero unless ``H psi0 = 0``)."""
    energies = energy_series(H, psi0, t_grid)
    scale = float(np.linalg.norm(hermitize(H)[0].entries @ psi0.amplitudes))
    if scale == 0.0:
        return float(np.max(np.abs(energies - energies[0])))
    return float(np.max(np.abs(energies - energies[0])) / scale)


@dataclass
class SimReport:
    """Output of :func:`divergence_experiment`.

    ``expectations`` and ``energies`` are keyed by rule (``"bj"``, ``"weyl"``).
    ``energy_drift`` is the larger of the two per-rule drifts in
    ``energy_drifts``; ``picture_delta`` the larger of the two picture checks.
    ``edge_population`` is the largest probability seen in the top quarter of
    Fock modes during either evolution.
    """

    time_grid: np.ndarray
    expectations: dict[str, np.ndarray]
    energies: dict[str, np.ndarray]
    energy_drifts: dict[str, float]
    picture_delta: float
    divergence: np.ndarray
    edge_population: float
    metadata: dict = field(default_factory=dict)

    @property
    def energy_drift(self) -> float:
        return max(self.energy_drifts.values())

    @property
    def max_divergence(self) -> float:
        return float(np.max(self.divergence))

    def rows(self) -> list[tuple[float, ...]]:
        bj, w = self.expectations["bj"], self.expectations["weyl"]
        return [tuple(float(x) for x in (t, bj[k].real, bj[k].imag, w[k].real, w[k].imag,
                                         self.divergence[k], self.energies["bj"][k],
                                         self.energies["weyl"][k]))
                for k, t in enumerate(self.time_grid)]

    def to_csv(self, path: str | Path) -> None:
        with Path(path).open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in self.rows():
                writer.writerow([repr(x) for x in row])

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "summary": {
                "max_divergence": self.max_divergence,
                "energy_drift": self.energy_drift,
                "energy_drift_bj": self.energy_drifts["bj"],
                "energy_drift_weyl": self.energy_drifts["weyl"],
                "picture_delta": self.picture_delta,
                "edge_population": self.edge_population,
            },
            "columns": list(CSV_COLUMNS),
            "series": [list(row) for row in self.rows()],
        }

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n")

    def write(self, path: str | Path) -> None:
        """Dispatch on suffix: ``.json`` or CSV otherwise."""
        if Path(path).suffix == ".json":
            self.to_json(path)
        else:
            self.to_csv(path)


def default_time_grid(t_max: float = 1.0, steps: int = 200) -> np.ndarray:
    return np.linspace(0.0, t_max, steps + 1)


def divergence_experiment(m: ClassicalLike, A: MatrixOperator | None = None,
                          psi0: StateVector | None = None, t_grid: Sequence[float] | None = None,
                          N: int = DEFAULT_DIM, hbar: float = 1.0,
                          observable: str = "q") -> SimReport:
    """Evolve one state under the Born-Jordan and the Weyl quantization of ``m``.

    Records ``<A>`` under both Hamiltonians, ``|<A>_bj - <A>_weyl|`` at each
    time, each Hamiltonian's own energy drift, and the picture-equivalence
    residual of each.  Defaults: ``A = q``, ``psi0`` the equal superposition
    of Fock modes 0..3, ``t_grid`` 201 points on ``[0, 1]``.
    """
    h = as_classical(m)
    if A is None:
        A = fock_generators(N, hbar)[0]
    if psi0 is None:
        psi0 = StateVector.fock_superposition(N)
    t_grid = default_time_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    _check_dims(A.dim, psi0.dim, N)
    low_mode = _warn_if_high_modes(psi0)

    k_edge = max(1, int(np.ceil(N * 0.25)))
    expectations, energies, drifts, deviations = {}, {}, {}, {}
    edge = 0.0
    picture = 0.0
    for rule, quantizer in (("bj", bj_quantize), ("weyl", weyl_quantize)):
        H = to_matrix(quantizer(h), N, hbar)
        evo = Evolution(H)
        deviations[rule] = evo.deviation
        series, energy = [], []
        for t in t_grid:
            psi = evo.state(psi0, t)
            edge = max(edge, float(np.sum(np.abs(psi[-k_edge:]) ** 2)))
            series.append(expectation(psi, A))
            energy.append(expectation(psi, evo.H).real)
        expectations[rule] = np.array(series)
        energies[rule] = np.array(energy)
        scale = float(np.linalg.norm(evo.H.entries @ psi0.amplitudes)) or 1.0
        drifts[rule] = float(np.max(np.abs(energies[rule] - energies[rule][0]))) / scale
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            picture = max(picture, picture_equivalence_check(psi0, A, evo.H, t_grid))

    if edge > LOW_MODE_TOL:
        warnings.warn(f"evolved state reached the truncation edge (population {edge:.2e}); "
                      "increase N or shorten t_grid", TruncationWarning, stacklevel=2)
    return SimReport(
        time_grid=np.asarray(t_grid, dtype=float),
        expectations=expectations,
        energies=energies,
        energy_drifts=drifts,
        picture_delta=picture,
        divergence=np.abs(expectations["bj"] - expectations["weyl"]),
        edge_population=edge,
        metadata={
            "hamiltonian": str(h), "observable": observable, "N": N, "hbar": hbar,
            "initial_state": "equal superposition of Fock modes 0..3" if low_mode else "custom",
            "hermitian_deviation_bj": deviations["bj"],
            "hermitian_deviation_weyl": deviations["weyl"],
        },
    )
