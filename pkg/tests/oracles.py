"""Independent reference implementations used only by the tests.

Each oracle deliberately avoids the code path it checks: the matrix
exponential is a scaling-and-squaring Taylor series, the permutation sums
are literal factorial-size enumerations, the adjacent-swap distance is a
breadth-first search over the permutation graph, and the two-particle
correlation is expanded term by term from the vacuum bracket rule.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np


def haar_unitary(rng, m: int) -> np.ndarray:
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_complex(rng, m: int, n: int | None = None) -> np.ndarray:
    n = m if n is None else n
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def taylor_expm(a: np.ndarray) -> np.ndarray:
    """exp(a) by scaling and squaring with a machine-precision Taylor tail."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    b = a / (2.0 ** squarings)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 40):
        term = term @ b / k
        result = result + term
        if np.abs(term).max() < 1e-18:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def inversions(perm) -> int:
    perm = list(perm)
    return sum(perm[i] > perm[j]
               for i in range(len(perm)) for j in range(i + 1, len(perm)))


def bfs_adjacent_swap_distance(perm) -> int:
    """Minimum number of adjacent transpositions from the identity."""
    start = tuple(range(len(perm)))
    target = tuple(perm)
    if target == start:
        return 0
    seen = {start: 0}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(len(current) - 1):
            swapped = list(current)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            swapped = tuple(swapped)
            if swapped not in seen:
                seen[swapped] = seen[current] + 1
                if swapped == target:
                    return seen[swapped]
                queue.append(swapped)
    raise AssertionError("unreachable for a valid permutation")


def naive_permanent(a: np.ndarray) -> complex:
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for i, p in enumerate(perm):
            prod *= a[i, p]
        total += prod
    return total


def naive_determinant(a: np.ndarray) -> complex:
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for i, p in enumerate(perm):
            prod *= a[i, p]
        total += (-1.0) ** inversions(perm) * prod
    return total


def naive_immanant(a: np.ndarray, phi: float) -> complex:
    n = a.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for i, p in enumerate(perm):
            prod *= a[i, p]
        total += np.exp(1j * phi * inversions(perm)) * prod
    return total


def bracket_two_particle(a: np.ndarray, j: int, k: int, phi: float) -> np.ndarray:
    """Two-particle correlations expanded from the vacuum bracket.

    Moving an annihilator past a creator on a different mode picks up
    e^{i*phi} when the annihilated mode label is below the created one and
    e^{-i*phi} above it, so

        <0| a_r a_q a+_s a+_t |0> =
            delta_{q,s} delta_{r,t} + e^{i*sgn(s-q)*phi} delta_{r,s} delta_{q,t}.

    Applied to the evolved pair sum_{s,t} A[s,j] A[t,k] a+_s a+_t |0>.
    The anyonic exchange algebra orders mode labels, so only the
    collision-free, ordered entries r < q of the result are meaningful.
    """
    m = a.shape[0]
    gamma = np.zeros((m, m))
    for r in range(m):
        for q in range(m):
            amp = 0.0 + 0.0j
            for s in range(m):
                for t in range(m):
                    coeff = a[s, j] * a[t, k]
                    if q == s and r == t:
                        amp += coeff
                    if r == s and q == t:
                        amp += np.exp(1j * np.sign(s - q) * phi) * coeff
            gamma[r, q] = abs(amp) ** 2
    return gamma


def three_particle_direct(a: np.ndarray, nu, mu, phi: float) -> float:
    """Six-term expansion with the explicit phase ladder (0, p, p, 2p, 2p, 3p)."""
    j, k, l = nu
    r, s, t = mu
    w = np.exp(1j * phi)
    amp = (a[r, j] * a[s, k] * a[t, l]
           + w * a[r, j] * a[s, l] * a[t, k]
           + w * a[r, k] * a[s, j] * a[t, l]
           + w ** 2 * a[r, k] * a[s, l] * a[t, j]
           + w ** 2 * a[r, l] * a[s, j] * a[t, k]
           + w ** 3 * a[r, l] * a[s, k] * a[t, j])
    return abs(amp) ** 2
