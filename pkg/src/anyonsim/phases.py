"""Exchange phases.

The exchange phase phi is the argument of the factor e^{i*phi} picked up by
a two-particle wavefunction under one pairwise exchange: phi = 0 gives
bosons, phi = pi fermions, anything in between abelian anyons.  Phases are
stored as a canonical representative in [0, 2*pi) so that every downstream
quantity depends on phi only through that representative.

Canonicalisation uses the IEEE-exact ``math.remainder``; two inputs that
differ by an exactly representable multiple of 2*pi therefore reduce to the
same float, bit for bit.

An anyonic phase may optionally record its decomposition phi = winding *
theta, with theta in (0, pi); the decomposition is metadata only and never
enters a computation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

__all__ = ["ExchangePhase", "as_phase", "BOSONIC", "FERMIONIC"]

_TAU = 2.0 * math.pi


def _canonical(phi: float) -> float:
    r = math.remainder(phi, _TAU)
    if r < 0.0:
        r += _TAU
    if r == _TAU:  # rounding of r + tau for tiny negative r
        r = 0.0
    return r


@dataclass(frozen=True)
class ExchangePhase:
    """A canonical exchange phase, optionally with an anyonic decomposition."""

    phi: float
    theta: float | None = None
    winding: int | None = None

    def __post_init__(self):
        if not math.isfinite(self.phi):
            raise InvalidArgumentError(f"exchange phase must be finite, got {self.phi}")
        object.__setattr__(self, "phi", _canonical(float(self.phi)))
        if (self.theta is None) != (self.winding is None):
            raise InvalidArgumentError(
                "theta and winding must be supplied together or not at all")
        if self.theta is not None:
            if not 0.0 < self.theta < math.pi:
                raise InvalidArgumentError(
                    f"theta must lie strictly between 0 and pi, got {self.theta}")
            if _canonical(self.winding * self.theta) != self.phi:
                raise InvalidArgumentError(
                    "decomposition winding*theta does not reproduce phi")

    @classmethod
    def from_braiding(cls, theta: float, winding: int) -> "ExchangePhase":
        """Phase acquired by `winding` braids of anyons with fractional phase `theta`."""
        return cls(winding * theta, theta=theta, winding=int(winding))

    @property
    def is_bosonic(self) -> bool:
        return self.phi == 0.0

    @property
    def is_fermionic(self) -> bool:
        return self.phi == math.pi

    def factor(self, swaps: int = 1) -> complex:
        """Return e^{i*phi*swaps}.

        Exact +-1.0 for the bosonic and fermionic cases so that the
        destructive interference behind Pauli exclusion cancels bit-exactly.
        """
        if self.is_bosonic:
            return 1.0 + 0.0j
        if self.is_fermionic:
            return complex(-1.0 if swaps % 2 else 1.0)
        return cmath.exp(1j * self.phi * swaps)


BOSONIC = ExchangePhase(0.0)
FERMIONIC = ExchangePhase(math.pi)


def as_phase(phi) -> ExchangePhase:
    """Coerce a float or ExchangePhase to an ExchangePhase."""
    if isinstance(phi, ExchangePhase):
        return phi
    return ExchangePhase(float(phi))
