"""NumPy implementations of the combinatorial kernels.

These are the import-time fallback when the compiled extension is not
available.  Both backends implement the same two primitives:

``immanant_sum(a, phi)``
    sum over all permutations s of e^{i*phi*tau(s)} * prod_j a[j, s(j)],
    where tau(s) is the inversion count of s (the minimum number of
    adjacent transpositions that sorts s).  phi = 0 gives the permanent,
    phi = pi the determinant.

``ryser_permanent(a)``
    the permanent via Ryser's inclusion-exclusion formula with Gray-code
    subset enumeration, O(2^N * N).

The fallback vectorises over permutations (resp. Gray-code steps) in
chunks, trading the compiled backend's O(1) memory for NumPy throughput.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

__all__ = ["immanant_sum", "ryser_permanent"]

_PERM_CHUNK = 1 << 16
_GRAY_CHUNK = 1 << 14
_PERM_TABLE_LIMIT = 9  # above this, permutations are streamed, not cached


@functools.lru_cache(maxsize=8)
def _permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of 0..n-1 (lexicographic) and their inversion counts."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return perms, _inversion_counts(perms)


def _inversion_counts(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    taus = np.zeros(len(perms), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            taus += perms[:, i] > perms[:, j]
    return taus


def _permutation_chunks(n: int):
    if n <= _PERM_TABLE_LIMIT:
        perms, taus = _permutation_table(n)
        for start in range(0, len(perms), _PERM_CHUNK):
            yield perms[start:start + _PERM_CHUNK], taus[start:start + _PERM_CHUNK]
        return
    stream = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(stream, _PERM_CHUNK))
        if not block:
            return
        perms = np.array(block, dtype=np.int64)
        yield perms, _inversion_counts(perms)


def immanant_sum(a: np.ndarray, phi: float) -> complex:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for block, taus in _permutation_chunks(n):
        if phi == 0.0:
            phases = np.ones(len(block))
        elif phi == np.pi:
            phases = 1.0 - 2.0 * (taus & 1)  # exact +-1
        else:
            phases = np.exp(1j * phi * taus)
        prods = a[0].take(block[:, 0])
        for j in range(1, n):
            prods = prods * a[j].take(block[:, j])
        total += prods @ phases
    return complex(total)


def ryser_permanent(a: np.ndarray) -> complex:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    # Gray-code walk over non-empty column subsets: step k toggles column
    # ctz(k), so consecutive row-sum vectors differ by one signed column.
    steps = np.arange(1, 1 << n, dtype=np.uint64)
    toggled = np.zeros(len(steps), dtype=np.int64)
    shifted = steps.copy()
    while np.any((shifted & np.uint64(1)) == 0):
        even = (shifted & np.uint64(1)) == 0
        toggled[even] += 1
        shifted[even] >>= np.uint64(1)
    gray = steps ^ (steps >> np.uint64(1))
    added = (gray >> toggled.astype(np.uint64)) & np.uint64(1)  # 1 if column enters
    # each step toggles one column, so |S| parity equals the step count parity
    signs = np.where((steps & np.uint64(1)) == 1, -1.0, 1.0)  # (-1)^{|S|}

    total = 0.0 + 0.0j
    rowsums = np.zeros(n, dtype=np.complex128)
    for start in range(0, len(steps), _GRAY_CHUNK):
        cols = toggled[start:start + _GRAY_CHUNK]
        sgn = np.where(added[start:start + _GRAY_CHUNK] == 1, 1.0, -1.0)
        # cumulative row-sum trajectory for this chunk
        deltas = a[:, cols].T * sgn[:, None]
        traj = rowsums + np.cumsum(deltas, axis=0)
        total += np.prod(traj, axis=1) @ signs[start:start + _GRAY_CHUNK]
        rowsums = traj[-1]
    return complex(total * ((-1.0) ** n))
