"""Correlation functions for identical particles with arbitrary exchange phase.

For N non-interacting identical particles entering a linear mode
transformation A at distinct inputs nu_1 < ... < nu_N, the joint detection
weight at an output tuple mu is

    G(mu) = | sum_{s in S_N} e^{i*phi*tau(s)} prod_j A[mu_j, nu_{s(j)}] |^2

with tau(s) the inversion count of s.  For phi = 0 the inner sum is the
permanent of the N x N block A[mu, nu], for phi = pi its determinant, and in
between an immanant-like permutation sum with complex weights.

A need not be unitary: blocks of larger unitaries are the primary use case.
Sum rules (the ordered-tuple total equals N!) hold only when the full
unitary is supplied.

Output tuples may contain repeated modes (bunching).  Values are reported
for the ordered tuple as given; the fermionic value on any tuple with a
repeat is exactly zero, and that path short-circuits so the zero is
bit-exact rather than a rounding residue.

All functions are pure.  The factorial-size permutation sums run on the
backend selected in :mod:`anyonsim.kernels`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (DuplicateInputError, InvalidArgumentError,
                     InvalidDimensionError, InvalidIndexError,
                     InvalidPermutationError, SizeLimitError)
from .phases import ExchangePhase, as_phase
from .walk import ensure_matrix

__all__ = [
    "CorrelationMatrix",
    "inversion_count",
    "permanent",
    "determinant",
    "two_particle_correlation",
    "classical_correlation",
    "n_particle_correlation",
    "correlation_tensor",
    "DEFAULT_MAX_PARTICLES",
]

DEFAULT_MAX_PARTICLES = 9
_PERMANENT_LIMIT = 20


@dataclass(frozen=True)
class CorrelationMatrix:
    """Joint detection weights over output tuples, with a measurability mask.

    ``values`` has one axis per particle (an M x M matrix for N = 2).
    ``mask`` marks which entries a detector layout can actually record; it
    defaults to all-measurable.  ``labels`` optionally carries display
    labels for the mode axis (one per internal index).
    """

    values: np.ndarray
    inputs: tuple[int, ...]
    phase: float | None
    mask: np.ndarray = field(default=None)
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if np.any(values < 0):
            raise InvalidArgumentError("correlation values must be non-negative")
        mask = self.mask
        if mask is None:
            mask = np.ones(values.shape, dtype=bool)
        else:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != values.shape:
                raise InvalidDimensionError(
                    f"mask shape {mask.shape} does not match values {values.shape}")
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "inputs", tuple(int(i) for i in self.inputs))
        if self.labels is not None:
            labels = tuple(int(l) for l in self.labels)
            if len(labels) != values.shape[0]:
                raise InvalidDimensionError(
                    f"{len(labels)} labels for {values.shape[0]} modes")
            object.__setattr__(self, "labels", labels)

    @property
    def particles(self) -> int:
        return self.values.ndim

    def windowed(self, indices, labels=None) -> "CorrelationMatrix":
        """Restrict every axis to the given mode indices (in order)."""
        idx = [int(i) for i in indices]
        for i in idx:
            if not 0 <= i < self.values.shape[0]:
                raise InvalidIndexError(f"window index {i} out of range")
        grid = np.ix_(*([idx] * self.values.ndim))
        return CorrelationMatrix(self.values[grid], self.inputs, self.phase,
                                 self.mask[grid],
                                 labels=tuple(labels) if labels is not None else None)

    def with_mask(self, mask) -> "CorrelationMatrix":
        return CorrelationMatrix(self.values, self.inputs, self.phase,
                                 np.asarray(mask, dtype=bool), labels=self.labels)


def inversion_count(perm) -> int:
    """Number of out-of-order pairs of a permutation of 0..N-1.

    Equals the minimum number of adjacent transpositions needed to sort it.
    """
    p = list(perm)
    n = len(p)
    if sorted(p) != list(range(n)):
        raise InvalidPermutationError(f"{tuple(perm)} is not a permutation of 0..{n - 1}")
    return sum(p[i] > p[j] for i in range(n) for j in range(i + 1, n))


def permanent(a) -> complex:
    """Permanent via Ryser's formula with Gray-code subset enumeration."""
    a = ensure_matrix(a, square=True)
    n = a.shape[0]
    if n > _PERMANENT_LIMIT:
        raise SizeLimitError(f"permanent limited to N <= {_PERMANENT_LIMIT}, got {n}")
    return kernels.ryser_permanent(a)


def determinant(a) -> complex:
    """Determinant via partial-pivot elimination."""
    a = ensure_matrix(a, square=True)
    return complex(np.linalg.det(a))


def _validate_inputs(inputs, n_cols: int | None = None) -> tuple[int, ...]:
    nu = tuple(int(i) for i in inputs)
    if len(set(nu)) != len(nu):
        raise DuplicateInputError(f"input modes must be distinct, got {nu}")
    if any(nu[i] >= nu[i + 1] for i in range(len(nu) - 1)):
        raise InvalidArgumentError(f"input modes must be strictly increasing, got {nu}")
    for i in nu:
        if i < 0 or (n_cols is not None and i >= n_cols):
            raise InvalidIndexError(f"input mode {i} out of range")
    return nu


def two_particle_correlation(a, j: int, k: int, phi) -> CorrelationMatrix:
    """Two-particle correlation over all ordered output pairs.

    Entry (r, q) is |A[r,j]*A[q,k] + e^{i*phi}*A[r,k]*A[q,j]|^2.
    """
    a = ensure_matrix(a)
    phi = as_phase(phi)
    j, k = int(j), int(k)
    if j == k:
        raise DuplicateInputError(f"input modes must differ, got ({j}, {k})")
    for idx in (j, k):
        if not 0 <= idx < a.shape[1]:
            raise InvalidIndexError(f"input mode {idx} out of range for {a.shape[1]} columns")
    direct = np.outer(a[:, j], a[:, k])
    exchanged = np.outer(a[:, k], a[:, j])
    amp = direct + phi.factor() * exchanged
    values = amp.real ** 2 + amp.imag ** 2
    if phi.is_fermionic and a.shape[0] > 0:
        # Pauli exclusion must be exact; vectorised complex products are not
        # guaranteed bitwise commutative, so the cancellation is enforced.
        np.fill_diagonal(values, 0.0)
    return CorrelationMatrix(values, (j, k) if j < k else (k, j), phi.phi)


def classical_correlation(a, j: int, k: int) -> CorrelationMatrix:
    """Distinguishable-particle correlations; independent of exchange phase.

    Entry (r, q) is |A[r,j]*A[q,k]|^2 + |A[r,k]*A[q,j]|^2, which equals the
    average of the bosonic and fermionic correlation matrices.
    """
    a = ensure_matrix(a)
    j, k = int(j), int(k)
    if j == k:
        raise DuplicateInputError(f"input modes must differ, got ({j}, {k})")
    for idx in (j, k):
        if not 0 <= idx < a.shape[1]:
            raise InvalidIndexError(f"input mode {idx} out of range for {a.shape[1]} columns")
    pj = np.abs(a[:, j]) ** 2
    pk = np.abs(a[:, k]) ** 2
    values = np.outer(pj, pk) + np.outer(pk, pj)
    return CorrelationMatrix(values, (j, k) if j < k else (k, j), None)


def n_particle_correlation(a, inputs, outputs, phi,
                           max_particles: int = DEFAULT_MAX_PARTICLES) -> float:
    """Joint detection weight for one sorted output tuple.

    Parameters
    ----------
    a:
        Mode transformation (square or rectangular block).
    inputs:
        Strictly increasing distinct input modes nu.
    outputs:
        Non-decreasing output modes mu, repeats allowed (bunching).
    phi:
        Exchange phase (float or ExchangePhase).
    max_particles:
        Cap on N; the permutation sum costs N! * N operations.

    Dispatches to |permanent|^2 for phi = 0 and |determinant|^2 for
    phi = pi (returning an exact 0.0 whenever a fermionic output tuple
    contains a repeated mode), and to the permutation-enumeration kernel
    otherwise.
    """
    a = ensure_matrix(a)
    phi = as_phase(phi)
    nu = _validate_inputs(inputs, a.shape[1])
    mu = tuple(int(i) for i in outputs)
    if len(mu) != len(nu):
        raise InvalidDimensionError(
            f"{len(mu)} outputs for {len(nu)} inputs")
    if any(mu[i] > mu[i + 1] for i in range(len(mu) - 1)):
        raise InvalidArgumentError(f"output modes must be non-decreasing, got {mu}")
    for i in mu:
        if not 0 <= i < a.shape[0]:
            raise InvalidIndexError(f"output mode {i} out of range for {a.shape[0]} rows")
    if len(nu) > max_particles:
        raise SizeLimitError(
            f"{len(nu)} particles exceed the cap of {max_particles}")
    return _correlation_value(a, nu, mu, phi)


def _correlation_value(a: np.ndarray, nu: tuple, mu: tuple, phi: ExchangePhase) -> float:
    """G(mu) for an arbitrary ordered output tuple (no sortedness check)."""
    block = a[np.ix_(mu, nu)]
    if phi.is_bosonic:
        amp = kernels.ryser_permanent(block)
    elif phi.is_fermionic:
        if len(set(mu)) != len(mu):
            return 0.0  # Pauli exclusion, exact by construction
        amp = np.linalg.det(block)
    else:
        amp = kernels.immanant_sum(block, phi.phi)
    return amp.real ** 2 + amp.imag ** 2


def correlation_tensor(a, inputs, phi,
                       max_particles: int = DEFAULT_MAX_PARTICLES,
                       distinguishable: bool = False) -> CorrelationMatrix:
    """Joint detection weights over *all* ordered output tuples.

    The tensor is assembled as a phase-weighted sum over the N! input
    permutations of outer products of the selected columns, which evaluates
    the permutation sum for every output tuple at once.  With
    ``distinguishable=True`` the entrywise-squared columns are combined with
    unit weights instead, giving the classical (phase-independent) tensor.
    """
    a = ensure_matrix(a)
    if phi is None and not distinguishable:
        raise InvalidArgumentError("an exchange phase is required for interference")
    phi = as_phase(phi) if phi is not None else None
    nu = _validate_inputs(inputs, a.shape[1])
    n = len(nu)
    if n > max_particles:
        raise SizeLimitError(f"{n} particles exceed the cap of {max_particles}")
    if math.factorial(n) * a.shape[0] ** n > 1 << 28:
        raise SizeLimitError(
            f"correlation tensor of {a.shape[0]}^{n} entries is over the size cap")
    cols = np.abs(a[:, nu]) ** 2 if distinguishable else a[:, nu]

    spec = ",".join(chr(ord("a") + i) for i in range(n))
    spec += "->" + "".join(chr(ord("a") + i) for i in range(n))
    out = np.zeros((a.shape[0],) * n,
                   dtype=float if distinguishable else complex)
    for perm in itertools.permutations(range(n)):
        if distinguishable:
            weight = 1.0
        else:
            weight = phi.factor(inversion_count(perm))
        out += weight * np.einsum(spec, *(cols[:, p] for p in perm))
    values = out if distinguishable else out.real ** 2 + out.imag ** 2
    if not distinguishable and phi.is_fermionic and n >= 2:
        # Pauli exclusion must hold exactly, not up to rounding: float
        # products across cancelling permutation pairs are not associative.
        values = np.where(_repeated_index_mask(values.shape), 0.0, values)
    return CorrelationMatrix(values, nu, None if distinguishable or phi is None else phi.phi)


def _repeated_index_mask(shape: tuple[int, ...]) -> np.ndarray:
    grids = np.indices(shape, sparse=True)
    repeat = np.zeros(shape, dtype=bool)
    for i in range(len(shape)):
        for j in range(i + 1, len(shape)):
            repeat |= grids[i] == grids[j]
    return repeat
