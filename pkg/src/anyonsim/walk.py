"""Uniform coupled-waveguide arrays and their evolution unitaries.

A uniform array of M evanescently coupled waveguides is described by a real,
symmetric, tridiagonal Hamiltonian with the propagation constant beta on the
diagonal and the coupling coefficient C on both off-diagonals.  Propagation
for an effective time T applies U = exp(i*H*T), a continuous-time quantum
walk on a line of M sites.

Because the matrix is tridiagonal Toeplitz its spectrum is known in closed
form,

    lambda_k = beta + 2*C*cos(k*pi/(M+1)),
    v_k(j)   = sqrt(2/(M+1)) * sin(j*k*pi/(M+1)),      j, k = 1..M,

so ``walk_unitary`` synthesises U exactly (up to rounding) from the spectral
decomposition instead of running an iterative matrix exponential.

All functions are pure; matrices are returned as fresh arrays and never
mutated.  Internally modes are indexed 0..M-1.  Display labels centred on
the middle waveguide (label 0 at index M//2) are handled by ``WalkConfig``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidArgumentError, InvalidDimensionError,
                     InvalidIndexError)

__all__ = [
    "WalkHamiltonian",
    "WalkConfig",
    "build_walk_hamiltonian",
    "walk_unitary",
    "submatrix",
    "unitarity_defect",
    "ensure_matrix",
]


def _frozen(m: np.ndarray) -> np.ndarray:
    # returned matrices are immutable so values can be shared across tasks
    m.flags.writeable = False
    return m


def ensure_matrix(a, *, square: bool = False) -> np.ndarray:
    """Validate and coerce a matrix to a fresh complex128 array.

    Rejects non-2-D input, empty dimensions, and non-finite entries.
    """
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise InvalidDimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise InvalidDimensionError(f"matrix has empty dimension: {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise InvalidArgumentError("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class WalkHamiltonian:
    """Parameters of the uniform tridiagonal array Hamiltonian."""

    size: int
    beta: float
    coupling: float

    def __post_init__(self):
        if self.size < 1:
            raise InvalidDimensionError(f"array needs at least one waveguide, got {self.size}")
        if not (math.isfinite(self.beta) and math.isfinite(self.coupling)):
            raise InvalidArgumentError("beta and coupling must be finite")

    def matrix(self) -> np.ndarray:
        return build_walk_hamiltonian(self.size, self.beta, self.coupling)


def build_walk_hamiltonian(size: int, beta: float, coupling: float) -> np.ndarray:
    """Dense M x M matrix with `beta` on the diagonal, `coupling` next to it."""
    if size < 1:
        raise InvalidDimensionError(f"array needs at least one waveguide, got {size}")
    if not (math.isfinite(beta) and math.isfinite(coupling)):
        raise InvalidArgumentError("beta and coupling must be finite")
    h = np.zeros((size, size))
    np.fill_diagonal(h, beta)
    idx = np.arange(size - 1)
    h[idx, idx + 1] = coupling
    h[idx + 1, idx] = coupling
    return _frozen(h)


def walk_unitary(hamiltonian: WalkHamiltonian, time: float) -> np.ndarray:
    """Synthesise U = exp(i*H*T) from the closed-form spectral decomposition.

    Parameters
    ----------
    hamiltonian:
        Uniform array parameters (size M, beta, coupling).
    time:
        Effective propagation time T (dimensionless product of propagation
        speed and distance; treated as a single opaque parameter).

    Returns
    -------
    np.ndarray
        Complex M x M unitary with max |U^dag U - I| below 1e-10.
    """
    if not math.isfinite(time):
        raise InvalidArgumentError(f"propagation time must be finite, got {time}")
    m = hamiltonian.size
    k = np.arange(1, m + 1)
    lam = hamiltonian.beta + 2.0 * hamiltonian.coupling * np.cos(k * np.pi / (m + 1))
    vecs = np.sqrt(2.0 / (m + 1)) * np.sin(np.outer(k, k) * (np.pi / (m + 1)))
    return _frozen((vecs * np.exp(1j * lam * time)) @ vecs.T)


def submatrix(a, rows, cols) -> np.ndarray:
    """Block of `a` given by the listed row and column indices (in order)."""
    a = ensure_matrix(a)
    rows = [int(r) for r in rows]
    cols = [int(c) for c in cols]
    for r in rows:
        if not 0 <= r < a.shape[0]:
            raise InvalidIndexError(f"row index {r} out of range for {a.shape[0]} rows")
    for c in cols:
        if not 0 <= c < a.shape[1]:
            raise InvalidIndexError(f"column index {c} out of range for {a.shape[1]} columns")
    return _frozen(a[np.ix_(rows, cols)])


def unitarity_defect(a) -> float:
    """Max-norm distance of A^dag A from the identity."""
    a = ensure_matrix(a, square=True)
    gram = a.conj().T @ a
    return float(np.abs(gram - np.eye(a.shape[0])).max())


@dataclass(frozen=True)
class WalkConfig:
    """One walk experiment: array, time, retained window, inputs, mask.

    ``window`` and ``inputs`` use internal indices 0..M-1.  Display labels
    are centred integers with label 0 at index ``label_offset`` (defaults to
    M//2, the middle waveguide of an odd array).
    """

    hamiltonian: WalkHamiltonian
    time: float
    window: tuple[int, ...]
    inputs: tuple[int, ...]
    phase: float | None = None
    mask: str = "none"
    label_offset: int | None = field(default=None)

    def __post_init__(self):
        m = self.hamiltonian.size
        object.__setattr__(self, "window", tuple(int(i) for i in self.window))
        object.__setattr__(self, "inputs", tuple(int(i) for i in self.inputs))
        if self.label_offset is None:
            object.__setattr__(self, "label_offset", m // 2)
        if len(set(self.window)) != len(self.window):
            raise InvalidArgumentError("window indices must be distinct")
        for i in self.window:
            if not 0 <= i < m:
                raise InvalidIndexError(f"window index {i} out of range for {m} modes")
        if len(set(self.inputs)) != len(self.inputs):
            raise InvalidArgumentError("input modes must be distinct")
        for i in self.inputs:
            if i not in self.window:
                raise InvalidIndexError(f"input mode {i} lies outside the window")

    def index_of(self, label: int) -> int:
        idx = label + self.label_offset
        if not 0 <= idx < self.hamiltonian.size:
            raise InvalidIndexError(
                f"label {label} maps to index {idx}, outside 0..{self.hamiltonian.size - 1}")
        return idx

    def label_of(self, index: int) -> int:
        return index - self.label_offset

    def unitary(self) -> np.ndarray:
        return walk_unitary(self.hamiltonian, self.time)

    @property
    def window_labels(self) -> tuple[int, ...]:
        return tuple(self.label_of(i) for i in self.window)
