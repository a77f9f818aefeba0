"""Detection masks for parity-limited output fan-outs.

The measured device alternated between coupling detectors to all
odd-labelled and all even-labelled waveguides, so a coincidence is
recordable only when every detected output belongs to the run's parity
class.  ``parity`` selects which runs are available:

- ``none``: every tuple measurable;
- ``odd`` / ``even``: only tuples whose labels all share that parity;
- ``both``: the union of the two runs (all-odd or all-even tuples).

Parity is evaluated on display labels, which may be negative.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError

__all__ = ["MASK_PARITIES", "build_parity_mask", "measurable_count"]

MASK_PARITIES = ("none", "odd", "even", "both")


def build_parity_mask(labels, parity: str, particles: int = 2) -> np.ndarray:
    """Boolean measurability array of shape (len(labels),) * particles."""
    if parity not in MASK_PARITIES:
        raise InvalidArgumentError(
            f"parity must be one of {MASK_PARITIES}, got {parity!r}")
    labels = np.asarray([int(l) for l in labels])
    if parity == "none":
        return np.ones((len(labels),) * particles, dtype=bool)
    odd = labels % 2 == 1
    masks = []
    if parity in ("odd", "both"):
        masks.append(odd)
    if parity in ("even", "both"):
        masks.append(~odd)
    total = np.zeros((len(labels),) * particles, dtype=bool)
    for axis_ok in masks:
        run = axis_ok.copy()
        for _ in range(particles - 1):
            run = run[..., None] & axis_ok
        total |= run
    return total


def measurable_count(labels, parity: str, particles: int = 2) -> int:
    return int(build_parity_mask(labels, parity, particles).sum())
