"""anyonsim: exchange-statistics detection correlations and their
simulation by shared multipartite entanglement.

The package computes the joint detection statistics of N identical,
non-interacting particles with an arbitrary exchange phase (bosons,
fermions, and abelian anyons in between) under any linear mode
transformation, and verifies that those statistics are reproduced exactly
by distributing an N-partite, N-level entangled state across N copies of
the transformation.
"""

__version__ = "0.1.0"

from .entangle import (ProcessCopies, SparseFockState, build_entangled_state,
                       coincidence_distribution, distinguishable_distribution,
                       evolve, symmetrized_distribution)
from .exchange import (CorrelationMatrix, classical_correlation,
                       correlation_tensor, determinant, inversion_count,
                       n_particle_correlation, permanent,
                       two_particle_correlation)
from .masks import build_parity_mask
from .metrics import similarity, total_variation
from .phases import BOSONIC, FERMIONIC, ExchangePhase
from .stategen import (QuditCircuit, QuditRegister, build_stategen_circuit,
                       circuit_fidelity, gate_counts, simulate_circuit)
from .walk import (WalkConfig, WalkHamiltonian, build_walk_hamiltonian,
                   submatrix, unitarity_defect, walk_unitary)

__all__ = [
    "__version__",
    "ExchangePhase", "BOSONIC", "FERMIONIC",
    "WalkHamiltonian", "WalkConfig", "build_walk_hamiltonian", "walk_unitary",
    "submatrix", "unitarity_defect",
    "CorrelationMatrix", "inversion_count", "permanent", "determinant",
    "two_particle_correlation", "classical_correlation",
    "n_particle_correlation", "correlation_tensor",
    "SparseFockState", "ProcessCopies", "build_entangled_state", "evolve",
    "coincidence_distribution", "symmetrized_distribution",
    "distinguishable_distribution",
    "QuditCircuit", "QuditRegister", "build_stategen_circuit",
    "simulate_circuit", "circuit_fidelity", "gate_counts",
    "similarity", "total_variation",
    "build_parity_mask",
]
