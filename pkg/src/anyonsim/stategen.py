"""Qudit circuits that prepare the phase-parameterised entangled input state.

The register holds N qudits of dimension N, numbered N down to 1; qudit q
uses levels 1..q.  Level k of a qudit encodes one particle in the k-th input
mode of one process copy: qudit q feeds copy N+1-q, so the register axes
(ordered qudit N first) line up with the copy ordering used by
:func:`anyonsim.entangle.build_entangled_state`.

The circuit has three stages:

1. a 1 x q mode splitter on each qudit q, taking |1> to the uniform
   superposition of levels 1..q (counted as q-1 two-mode splitters);
2. a phase shift of (k-1)*phi on level k of each qudit;
3. for each step r = 1..N-1, a ladder of controlled two-mode swaps with
   control qudit r+1: conditioned on control level j, levels {j..r} of
   every target qudit r..1 are shifted up by one (realised as the swaps
   (r, r+1), (r-1, r), ..., (j, j+1), in that order).

The controlled-swap total is sum_{i=1}^{N-1} i * i*(i+1)/2, which grows as
N^4/8; splitters and phase shifts each contribute N*(N-1)/2 local
operations.

Simulation is dense over the N^N register amplitudes, so fidelity checks
are exact; sizes are capped accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entangle import build_entangled_state
from .errors import (InvalidArgumentError, InvalidDimensionError,
                     SizeLimitError)
from .phases import as_phase

__all__ = [
    "ModeSplitter",
    "PhaseShift",
    "ControlledSwap",
    "QuditCircuit",
    "QuditRegister",
    "GateCounts",
    "build_stategen_circuit",
    "simulate_circuit",
    "circuit_fidelity",
    "gate_counts",
    "circuit_to_text",
    "circuit_from_text",
    "controlled_swap_formula",
]

_FIDELITY_PARTICLE_CAP = 6


@dataclass(frozen=True)
class ModeSplitter:
    """1 x span splitter: |1> -> uniform superposition of levels 1..span."""

    qudit: int
    span: int


@dataclass(frozen=True)
class PhaseShift:
    """Multiply level `level` of `qudit` by e^{i*shift}."""

    qudit: int
    level: int
    shift: float


@dataclass(frozen=True)
class ControlledSwap:
    """Swap two modes of `target` when `control` holds `control_level`."""

    control: int
    control_level: int
    target: int
    modes: tuple[int, int]


Gate = ModeSplitter | PhaseShift | ControlledSwap


@dataclass(frozen=True)
class QuditCircuit:
    particles: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        n = self.particles
        for g in self.gates:
            if isinstance(g, ModeSplitter):
                ok = 1 <= g.qudit <= n and 1 <= g.span <= n
            elif isinstance(g, PhaseShift):
                ok = 1 <= g.qudit <= n and 1 <= g.level <= n
            else:
                ok = (1 <= g.control <= n and 1 <= g.target <= n
                      and g.control != g.target
                      and 1 <= g.control_level <= n
                      and all(1 <= m <= n for m in g.modes)
                      and g.modes[0] != g.modes[1])
            if not ok:
                raise InvalidArgumentError(f"gate {g} inconsistent with {n} qudits")


@dataclass(frozen=True)
class QuditRegister:
    """Dense amplitudes over level tuples; axis 0 is qudit N, axis N-1 qudit 1."""

    particles: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = self.particles
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (n,) * n:
            raise InvalidDimensionError(
                f"register of {n} qudits needs shape {(n,) * n}, got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def ground(cls, particles: int) -> "QuditRegister":
        """All qudits in level 1."""
        amps = np.zeros((particles,) * particles, dtype=complex)
        amps[(0,) * particles] = 1.0
        return cls(particles, amps)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def _axis(self, qudit: int) -> int:
        return self.particles - qudit


def build_stategen_circuit(particles: int, phi) -> QuditCircuit:
    """Circuit preparing the N-particle entangled state with exchange phase phi."""
    n = int(particles)
    if n < 2:
        raise InvalidArgumentError(f"state generation needs at least 2 particles, got {n}")
    phi = as_phase(phi)
    gates: list[Gate] = []
    for q in range(2, n + 1):
        gates.append(ModeSplitter(qudit=q, span=q))
    for q in range(2, n + 1):
        for k in range(2, q + 1):
            gates.append(PhaseShift(qudit=q, level=k, shift=(k - 1) * phi.phi))
    for r in range(1, n):
        for j in range(1, r + 1):
            for target in range(r, 0, -1):
                for m in range(r, j - 1, -1):
                    gates.append(ControlledSwap(control=r + 1, control_level=j,
                                                target=target, modes=(m, m + 1)))
    return QuditCircuit(n, tuple(gates))


def _splitter_matrix(span: int, dim: int) -> np.ndarray:
    """Unitary completion of |1> -> uniform: DFT on the first `span` levels."""
    mat = np.eye(dim, dtype=complex)
    idx = np.arange(span)
    mat[:span, :span] = np.exp(2j * np.pi * np.outer(idx, idx) / span) / math.sqrt(span)
    return mat


def _apply_axis_matrix(amps: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(mat, amps, axes=(1, axis)), 0, axis)


def simulate_circuit(circuit: QuditCircuit,
                     initial: QuditRegister | None = None) -> QuditRegister:
    """Apply the gate list in order to `initial` (default: all qudits in level 1)."""
    n = circuit.particles
    if initial is None:
        initial = QuditRegister.ground(n)
    if initial.particles != n:
        raise InvalidDimensionError(
            f"register holds {initial.particles} qudits, circuit expects {n}")
    amps = initial.amplitudes.copy()
    for gate in circuit.gates:
        if isinstance(gate, ModeSplitter):
            amps = _apply_axis_matrix(amps, _splitter_matrix(gate.span, n),
                                      initial._axis(gate.qudit))
        elif isinstance(gate, PhaseShift):
            sel = [slice(None)] * n
            sel[initial._axis(gate.qudit)] = gate.level - 1
            amps[tuple(sel)] *= np.exp(1j * gate.shift)
        else:
            view = np.moveaxis(amps, (initial._axis(gate.control),
                                      initial._axis(gate.target)), (0, 1))
            block = view[gate.control_level - 1]
            lo, hi = gate.modes[0] - 1, gate.modes[1] - 1
            block[[lo, hi]] = block[[hi, lo]]
    return QuditRegister(n, amps)


def circuit_fidelity(circuit: QuditCircuit, phi) -> float:
    """Overlap |<reference|circuit output>|^2 with the directly built state.

    The reference register encodes :func:`build_entangled_state` on input
    modes 0..N-1 via the level<->input-mode identification (level k of the
    qudit feeding copy j holds input mode k-1 of copy j).
    """
    n = circuit.particles
    if n > _FIDELITY_PARTICLE_CAP:
        raise SizeLimitError(
            f"fidelity check is dense over N^N amplitudes; cap is N <= {_FIDELITY_PARTICLE_CAP}")
    produced = simulate_circuit(circuit)
    reference = np.zeros((n,) * n, dtype=complex)
    for label, amp in build_entangled_state(n, range(n), phi).amplitudes.items():
        reference[label] = amp
    overlap = np.vdot(reference, produced.amplitudes)
    return float(abs(overlap) ** 2)


@dataclass(frozen=True)
class GateCounts:
    """Two-mode splitter decompositions, phase shifts, controlled swaps."""

    splitters: int
    phase_shifts: int
    controlled_swaps: int

    @property
    def local(self) -> int:
        return self.splitters + self.phase_shifts


def gate_counts(circuit: QuditCircuit) -> GateCounts:
    """Count gates, decomposing each 1 x k splitter into k-1 two-mode splitters."""
    splitters = sum(g.span - 1 for g in circuit.gates if isinstance(g, ModeSplitter))
    phases = sum(1 for g in circuit.gates if isinstance(g, PhaseShift))
    swaps = sum(1 for g in circuit.gates if isinstance(g, ControlledSwap))
    return GateCounts(splitters, phases, swaps)


def controlled_swap_formula(particles: int) -> int:
    """Closed form sum_{i=1}^{N-1} i * sum_{j=1}^{i} j for the swap count."""
    return sum(i * i * (i + 1) // 2 for i in range(1, particles))


def circuit_to_text(circuit: QuditCircuit) -> str:
    """One gate per line; phases rendered with 17 significant digits."""
    lines = [f"qudits {circuit.particles}"]
    for g in circuit.gates:
        if isinstance(g, ModeSplitter):
            lines.append(f"splitter qudit={g.qudit} span={g.span}")
        elif isinstance(g, PhaseShift):
            lines.append(f"phase qudit={g.qudit} level={g.level} shift={g.shift:.17g}")
        else:
            lines.append(f"cswap control={g.control} level={g.control_level} "
                         f"target={g.target} modes={g.modes[0]},{g.modes[1]}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> QuditCircuit:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("qudits "):
        raise InvalidArgumentError("circuit text must start with a 'qudits N' line")
    n = int(lines[0].split()[1])
    gates: list[Gate] = []
    for ln in lines[1:]:
        kind, *fields = ln.split()
        kv = dict(f.split("=", 1) for f in fields)
        if kind == "splitter":
            gates.append(ModeSplitter(int(kv["qudit"]), int(kv["span"])))
        elif kind == "phase":
            gates.append(PhaseShift(int(kv["qudit"]), int(kv["level"]),
                                    float(kv["shift"])))
        elif kind == "cswap":
            lo, hi = kv["modes"].split(",")
            gates.append(ControlledSwap(int(kv["control"]), int(kv["level"]),
                                        int(kv["target"]), (int(lo), int(hi))))
        else:
            raise InvalidArgumentError(f"unknown gate kind {kind!r}")
    return QuditCircuit(n, tuple(gates))
