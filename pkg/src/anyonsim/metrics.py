"""Distribution-comparison metrics.

``similarity`` is the self-normalising Bhattacharyya-style overlap

    S = (sum sqrt(G * P))^2 / (sum G * sum P),

which maps two non-negative arrays (counts or probabilities, no
normalisation required) to [0, 1], reaching 1 exactly when the entries are
proportional.  ``total_variation`` is the usual half L1 distance after
normalising both arguments to unit mass.

Entries masked out as unmeasurable are excluded from both arguments
symmetrically before either metric is evaluated.
"""

from __future__ import annotations

import numpy as np

from .errors import (DegenerateDistributionError, InvalidArgumentError,
                     InvalidDistributionError)

__all__ = ["similarity", "total_variation"]


def _included(first, second, mask):
    a = np.asarray(first, dtype=float).ravel()
    b = np.asarray(second, dtype=float).ravel()
    if a.shape != b.shape:
        raise InvalidArgumentError(
            f"distributions differ in size: {a.size} vs {b.size}")
    if mask is not None:
        m = np.asarray(mask, dtype=bool).ravel()
        if m.shape != a.shape:
            raise InvalidArgumentError(
                f"mask size {m.size} does not match distributions of size {a.size}")
        a, b = a[m], b[m]
    if np.any(a < 0) or np.any(b < 0):
        raise InvalidDistributionError("distribution entries must be non-negative")
    return a, b


def similarity(first, second, mask=None) -> float:
    """Overlap in [0, 1]; invariant under rescaling either argument."""
    a, b = _included(first, second, mask)
    ta, tb = a.sum(), b.sum()
    if ta == 0.0 or tb == 0.0:
        raise DegenerateDistributionError("a compared distribution has zero total mass")
    return float(np.sqrt(a * b).sum() ** 2 / (ta * tb))


def total_variation(first, second, mask=None) -> float:
    """Half L1 distance between the unit-mass normalisations, in [0, 1]."""
    a, b = _included(first, second, mask)
    ta, tb = a.sum(), b.sum()
    if ta == 0.0 or tb == 0.0:
        raise DegenerateDistributionError("a compared distribution has zero total mass")
    return float(0.5 * np.abs(a / ta - b / tb).sum())
