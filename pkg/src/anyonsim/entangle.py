"""Simulation of N-particle interference by shared N-partite entanglement.

Instead of sending N identical particles through one transformation A, one
particle is sent through each of N copies of A, with the copies fed by the
entangled input

    (1/sqrt(N!)) * sum_{s in S_N} e^{i*phi*tau(s)}
                   a(1)+_{nu_{s(1)}} ... a(N)+_{nu_{s(N)}} |0>,

where a(j)+_m creates one particle in mode m of copy j and tau is the
inversion count.  After evolution, the N-fold coincidence probability at
the ordered output tuple mu equals the exchange-statistics correlation
G(mu) divided by N!, for any exchange phase phi.

States are sparse maps from occupation labels (one mode index per copy) to
complex amplitudes.  Evolution goes through a dense rank-N tensor whenever
modes**N fits the size cap and falls back to sparse dictionary accumulation
otherwise.  Everything here is pure: states are never mutated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidArgumentError, InvalidDimensionError,
                     InvalidIndexError, SizeLimitError)
from .exchange import (CorrelationMatrix, correlation_tensor, inversion_count,
                       _validate_inputs)
from .phases import as_phase
from .walk import ensure_matrix

__all__ = [
    "SparseFockState",
    "ProcessCopies",
    "build_entangled_state",
    "evolve",
    "coincidence_distribution",
    "symmetrized_distribution",
    "distinguishable_distribution",
]

_DENSE_AMPLITUDE_CAP = 1 << 22


@dataclass(frozen=True)
class SparseFockState:
    """Linear combination of occupation labels, one particle per copy.

    ``amplitudes`` maps label tuples (mode of copy 1, ..., mode of copy N)
    to complex amplitudes.  ``inputs`` and ``phase`` record how the state
    was prepared so that downstream distributions can carry them along.
    """

    amplitudes: dict[tuple[int, ...], complex]
    copies: int
    inputs: tuple[int, ...] | None = None
    phase: float | None = None

    def __post_init__(self):
        for label in self.amplitudes:
            if len(label) != self.copies:
                raise InvalidDimensionError(
                    f"label {label} does not have one entry per copy ({self.copies})")

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))


@dataclass(frozen=True)
class ProcessCopies:
    """N copies of a mode transformation, one per entangled particle."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(ensure_matrix(m) for m in self.matrices)
        if not mats:
            raise InvalidArgumentError("at least one process copy is required")
        shape = mats[0].shape
        for m in mats[1:]:
            if m.shape != shape:
                raise InvalidDimensionError(
                    f"process copies differ in shape: {m.shape} vs {shape}")
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def identical(cls, a, copies: int) -> "ProcessCopies":
        a = ensure_matrix(a)
        return cls(tuple(a for _ in range(copies)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrices[0].shape

    def __len__(self) -> int:
        return len(self.matrices)


def build_entangled_state(particles: int, inputs, phi) -> SparseFockState:
    """Entangled input state whose N-fold coincidences mimic exchange phase phi.

    One term per permutation s: copy j carries a particle in mode
    nu_{s(j)}, with amplitude e^{i*phi*tau(s)} / sqrt(N!).
    """
    n = int(particles)
    if n < 2:
        raise InvalidArgumentError(f"entangled state needs at least 2 particles, got {n}")
    nu = tuple(int(i) for i in inputs)
    if len(nu) != n:
        raise InvalidDimensionError(f"{len(nu)} input modes for {n} particles")
    _validate_inputs(nu)
    phi = as_phase(phi)
    scale = 1.0 / math.sqrt(math.factorial(n))
    amplitudes = {}
    for perm in itertools.permutations(range(n)):
        label = tuple(nu[p] for p in perm)
        amplitudes[label] = phi.factor(inversion_count(perm)) * scale
    return SparseFockState(amplitudes, n, inputs=nu, phase=phi.phi)


def evolve(state: SparseFockState, copies) -> SparseFockState:
    """Send particle j of the state through copy j of the transformation.

    Each creation operator on mode m of copy j maps to
    sum_s A(j)[s, m] * (creation on mode s), so the output amplitude on
    label (s_1..s_N) is the input amplitude contracted with
    prod_j A(j)[s_j, m_j].
    """
    if not isinstance(copies, ProcessCopies):
        copies = ProcessCopies(tuple(copies))
    if len(copies) != state.copies:
        raise InvalidDimensionError(
            f"{len(copies)} process copies for a {state.copies}-particle state")
    rows, cols = copies.shape
    for label in state.amplitudes:
        for m in label:
            if not 0 <= m < cols:
                raise InvalidIndexError(
                    f"state occupies mode {m}, outside the {cols}-column process")
    n = state.copies
    if max(rows, cols) ** n <= _DENSE_AMPLITUDE_CAP:
        amplitudes = _evolve_dense(state, copies, rows, cols)
    else:
        amplitudes = _evolve_sparse(state, copies, rows)
    return SparseFockState(amplitudes, n, inputs=state.inputs, phase=state.phase)


def _evolve_dense(state, copies, rows, cols):
    n = state.copies
    psi = np.zeros((cols,) * n, dtype=complex)
    for label, amp in state.amplitudes.items():
        psi[label] += amp
    for j, a in enumerate(copies.matrices):
        psi = np.moveaxis(np.tensordot(a, psi, axes=(1, j)), 0, j)
    flat = psi.reshape(-1)
    nonzero = np.flatnonzero(flat)
    index_arrays = np.unravel_index(nonzero, psi.shape)
    labels = zip(*(arr.tolist() for arr in index_arrays))
    return dict(zip(labels, flat[nonzero].tolist()))


def _evolve_sparse(state, copies, rows):
    terms = state.amplitudes
    for j, a in enumerate(copies.matrices):
        expanded: dict[tuple[int, ...], complex] = {}
        for label, amp in terms.items():
            column = a[:, label[j]]
            head, tail = label[:j], label[j + 1:]
            for s in range(rows):
                c = column[s]
                if c == 0.0:
                    continue
                key = head + (s,) + tail
                if key in expanded:
                    expanded[key] += amp * c
                else:
                    expanded[key] = amp * c
        terms = expanded
    return terms


def coincidence_distribution(state: SparseFockState, modes: int | None = None) -> CorrelationMatrix:
    """N-fold coincidence probabilities |amplitude|^2 over all labels."""
    n = state.copies
    if modes is None:
        modes = 1 + max((max(label) for label in state.amplitudes), default=0)
    if modes ** n > _DENSE_AMPLITUDE_CAP:
        raise SizeLimitError(f"distribution of {modes}^{n} entries is over the size cap")
    values = np.zeros((modes,) * n)
    if state.amplitudes:
        keys = np.array(list(state.amplitudes.keys()))
        amps = np.array(list(state.amplitudes.values()))
        values[tuple(keys.T)] = amps.real ** 2 + amps.imag ** 2
    return CorrelationMatrix(values, state.inputs or (), state.phase)


def symmetrized_distribution(dist: CorrelationMatrix) -> CorrelationMatrix:
    """Fold an ordered-tuple distribution onto sorted representatives.

    Entry at a non-decreasing tuple mu is the sum of the distribution over
    all distinct orderings of mu, which cancels the 1/N! preparation
    prefactor on every collision-free tuple.  Tuples with repeated modes
    have fewer orderings: the folded value there is the correlation value
    divided by the product of the mode multiplicity factorials.  All other
    positions are zero and masked out.
    """
    n = dist.particles
    modes = dist.values.shape[0]
    values = np.zeros_like(dist.values)
    mask = np.zeros_like(dist.mask)
    for rep in itertools.combinations_with_replacement(range(modes), n):
        orderings = set(itertools.permutations(rep))
        values[rep] = sum(dist.values[o] for o in orderings)
        mask[rep] = all(dist.mask[o] for o in orderings)
    return CorrelationMatrix(values, dist.inputs, dist.phase, mask, labels=dist.labels)


def distinguishable_distribution(a, inputs,
                                 max_particles: int = 9) -> CorrelationMatrix:
    """Classical joint detection weights: no interference between paths.

    Sums |A[mu_j, nu_{s(j)}]|^2 over permutations s, i.e. the permanent of
    the entrywise-squared block, for every ordered output tuple.
    """
    return correlation_tensor(a, inputs, None, max_particles=max_particles,
                              distinguishable=True)
