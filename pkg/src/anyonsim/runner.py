"""Configuration-driven experiment runs, sampling, and comparisons.

``run`` resolves a configuration into its process matrix, computes the
requested correlation matrices (or state-generation circuits), restricts
them to the display window, applies the detection mask, and writes
deterministic result files plus a manifest of all resolved parameters.

Correlations are always computed on the full process and only then
windowed, so sum-rule diagnostics (ordered-tuple total = N! for a unitary
process) refer to the full output space; the manifest records both the
full and the windowed totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, io
from .config import (ExperimentConfig, InlineProcessSpec, WalkProcessSpec,
                     load_config)
from .entangle import (ProcessCopies, build_entangled_state,
                       coincidence_distribution, distinguishable_distribution,
                       evolve)
from .errors import AnyonsimError, ComparisonError, ConfigError
from .exchange import (CorrelationMatrix, classical_correlation,
                       correlation_tensor, two_particle_correlation)
from .masks import build_parity_mask
from .metrics import similarity, total_variation
from .stategen import (build_stategen_circuit, circuit_fidelity,
                       circuit_to_text, gate_counts, simulate_circuit)
from .walk import WalkConfig, WalkHamiltonian

__all__ = ["ResolvedProcess", "resolve_process", "run", "sample",
           "compare_files", "phase_slug"]

_STATEGEN_STATE_DUMP_CAP = 4
_STATEGEN_FIDELITY_CAP = 6


@dataclass(frozen=True)
class ResolvedProcess:
    """A process matrix together with its display window and inputs."""

    matrix: np.ndarray
    window: tuple[int, ...]
    window_labels: tuple[int, ...]
    input_indices: tuple[int, ...]
    input_labels: tuple[int, ...]
    description: dict


def resolve_process(config: ExperimentConfig) -> ResolvedProcess:
    spec = config.process
    if spec is None:
        raise ConfigError(f"mode {config.mode!r} has no process to resolve")
    if isinstance(spec, WalkProcessSpec):
        ham = WalkHamiltonian(spec.modes, spec.beta, spec.coupling)
        offset = spec.label_offset
        labels = spec.window_labels
        if labels is None:
            labels = tuple(l - offset for l in range(spec.modes))
        window = tuple(l + offset for l in labels)
        try:
            walk = WalkConfig(ham, spec.time, window,
                              tuple(l + offset for l in config.inputs),
                              mask=config.mask)
        except AnyonsimError as exc:
            raise ConfigError(str(exc), "inputs")
        matrix = walk.unitary()
        label_to_index = {walk.label_of(i): i for i in window}
        description = {"kind": "walk", "modes": spec.modes, "beta": spec.beta,
                       "coupling": spec.coupling, "time": spec.time,
                       "label_offset": offset}
    else:
        assert isinstance(spec, InlineProcessSpec)
        matrix = spec.entries
        labels = spec.labels
        if labels is None:
            labels = tuple(range(matrix.shape[0]))
        window = tuple(range(matrix.shape[0]))
        label_to_index = dict(zip(labels, window))
        description = {"kind": "inline", "modes": matrix.shape[0]}

    input_indices = []
    for label in config.inputs:
        if label not in label_to_index:
            raise ConfigError(f"input label {label} is outside the window", "inputs")
        input_indices.append(label_to_index[label])
    indices = tuple(input_indices)
    if any(indices[i] >= indices[i + 1] for i in range(len(indices) - 1)):
        raise ConfigError("inputs must be strictly increasing", "inputs")
    return ResolvedProcess(matrix, window, tuple(labels), indices,
                           tuple(config.inputs), description)


def phase_slug(phi: float, taken=()) -> str:
    slug = f"phi{phi:.4f}"
    if slug in taken:
        suffix = 2
        while f"{slug}-{suffix}" in taken:
            suffix += 1
        slug = f"{slug}-{suffix}"
    return slug


def _correlation_for_phase(config: ExperimentConfig, proc: ResolvedProcess,
                           phi: float | None):
    """Full-space correlation matrix plus equivalence diagnostics."""
    diagnostics = {}
    if config.mode == "two_particle":
        j, k = proc.input_indices
        full = two_particle_correlation(proc.matrix, j, k, phi)
    elif config.mode == "distinguishable":
        if len(proc.input_indices) == 2:
            full = classical_correlation(proc.matrix, *proc.input_indices)
        else:
            full = distinguishable_distribution(proc.matrix, proc.input_indices)
    elif config.mode == "n_particle":
        full = correlation_tensor(proc.matrix, proc.input_indices, phi)
    elif config.mode == "entangled_sim":
        n = len(proc.input_indices)
        state = build_entangled_state(n, proc.input_indices, phi)
        evolved = evolve(state, ProcessCopies.identical(proc.matrix, n))
        full = coincidence_distribution(evolved, modes=proc.matrix.shape[0])
        reference = correlation_tensor(proc.matrix, proc.input_indices, phi)
        diagnostics["norm"] = evolved.norm_squared()
        diagnostics["equivalence_defect"] = float(
            np.abs(math.factorial(n) * full.values - reference.values).max())
    else:
        raise ConfigError(f"mode {config.mode!r} does not produce correlations")
    diagnostics["full_ordered_total"] = float(full.values.sum())
    return full, diagnostics


def _windowed(config: ExperimentConfig, proc: ResolvedProcess,
              full: CorrelationMatrix) -> CorrelationMatrix:
    windowed = full.windowed(proc.window, labels=proc.window_labels)
    mask = build_parity_mask(proc.window_labels, config.mask, windowed.particles)
    return windowed.with_mask(mask)


def _matrix_document(config, proc, corr: CorrelationMatrix,
                     phi, diagnostics) -> dict:
    values = corr.values
    measurable_total = float(values[corr.mask].sum())
    normalized = values / measurable_total if measurable_total > 0 else values * 0.0
    return {
        "kind": "correlation_matrix",
        "mode": config.mode,
        "particles": corr.particles,
        "phase": phi,
        "inputs": {"labels": list(proc.input_labels),
                   "indices": list(proc.input_indices)},
        "modes": {"labels": list(proc.window_labels),
                  "indices": list(proc.window)},
        "mask": config.mask,
        "raw": values.tolist(),
        "normalized": normalized.tolist(),
        "measurable": corr.mask.tolist(),
        "totals": {"raw": float(values.sum()),
                   "raw_measurable": measurable_total,
                   **diagnostics},
    }


def _reference_metrics(config, corr: CorrelationMatrix, slug: str) -> dict:
    """Similarity of the computed matrix to a measured/sampled counterpart."""
    stem = config.reference.stem or config.stem
    directory = Path(config.reference.directory)
    candidates = [directory / f"{stem}_{slug}{suffix}"
                  for suffix in (".counts.csv", ".raw.csv", ".csv")]
    path = next((c for c in candidates if c.exists()), None)
    if path is None:
        raise ConfigError(f"no reference file for {slug!r} under {directory}",
                          "reference")
    labels, values, mask = io.load_pair_matrix(path)
    if tuple(labels) != tuple(corr.labels):
        raise ComparisonError(
            f"reference {path} labels {labels} do not match the window "
            f"{list(corr.labels)}")
    shared = mask & corr.mask
    return {
        "reference_file": str(path),
        "similarity": similarity(corr.values, values, shared),
        "total_variation": total_variation(corr.values, values, shared),
    }


def _run_correlations(config, out_dir: Path, formats) -> dict:
    proc = resolve_process(config)
    phases = ((None,) if config.mode == "distinguishable" else config.phases)
    results = []
    slugs: list[str] = []
    for phi in phases:
        slug = "classical" if phi is None else phase_slug(phi, slugs)
        slugs.append(slug)
        full, diagnostics = _correlation_for_phase(config, proc, phi)
        corr = _windowed(config, proc, full)
        if config.reference is not None and corr.particles == 2:
            diagnostics.update(_reference_metrics(config, corr, slug))
        doc = _matrix_document(config, proc, corr, phi, diagnostics)
        files = {}
        if "json" in formats:
            path = out_dir / f"{config.stem}_{slug}.json"
            io.write_json(path, doc)
            files["json"] = path.name
        if "csv" in formats and corr.particles == 2:
            raw = out_dir / f"{config.stem}_{slug}.raw.csv"
            io.write_pair_matrix_csv(raw, corr.labels, corr.values, corr.mask)
            norm = out_dir / f"{config.stem}_{slug}.csv"
            io.write_pair_matrix_csv(norm, corr.labels,
                                     np.asarray(doc["normalized"]), corr.mask)
            files["raw_csv"] = raw.name
            files["normalized_csv"] = norm.name
        results.append({"phase": phi, "slug": slug, "files": files,
                        "diagnostics": diagnostics})
    return {"process": proc.description,
            "inputs": {"labels": list(proc.input_labels),
                       "indices": list(proc.input_indices)},
            "window": {"labels": list(proc.window_labels),
                       "indices": list(proc.window)},
            "results": results}


def _run_stategen(config, out_dir: Path, formats) -> dict:
    n = config.particles
    results = []
    slugs: list[str] = []
    for phi in config.phases:
        slug = phase_slug(phi, slugs)
        slugs.append(slug)
        circuit = build_stategen_circuit(n, phi)
        counts = gate_counts(circuit)
        report = {
            "kind": "stategen_report",
            "particles": n,
            "phase": phi,
            "gate_counts": {"splitters": counts.splitters,
                            "phase_shifts": counts.phase_shifts,
                            "local": counts.local,
                            "controlled_swaps": counts.controlled_swaps},
        }
        if n <= _STATEGEN_FIDELITY_CAP:
            report["fidelity"] = circuit_fidelity(circuit, phi)
        if n <= _STATEGEN_STATE_DUMP_CAP:
            register = simulate_circuit(circuit)
            amplitudes = []
            for idx in np.ndindex(register.amplitudes.shape):
                amp = register.amplitudes[idx]
                if abs(amp) > 1e-14:
                    amplitudes.append({"levels": [i + 1 for i in idx],
                                       "re": float(amp.real),
                                       "im": float(amp.imag)})
            report["state"] = amplitudes
        files = {}
        circuit_path = out_dir / f"{config.stem}_{slug}.circuit.txt"
        circuit_path.write_text(circuit_to_text(circuit))
        files["circuit"] = circuit_path.name
        if "json" in formats:
            path = out_dir / f"{config.stem}_{slug}.json"
            io.write_json(path, report)
            files["json"] = path.name
        results.append({"phase": phi, "slug": slug, "files": files,
                        "diagnostics": {"controlled_swaps": counts.controlled_swaps}})
    return {"particles": n, "results": results}


def run(config: ExperimentConfig | str, out_dir=None, formats=None) -> dict:
    """Execute a configuration and write result files plus a manifest.

    ``out_dir`` and ``formats`` override the configuration's ``output``
    settings; with neither given, files land under ``./out`` in both CSV
    and structured form.
    """
    if not isinstance(config, ExperimentConfig):
        config = load_config(config)
    out_dir = Path(out_dir if out_dir is not None else config.out_dir or "out")
    formats = tuple(formats) if formats is not None else (config.formats
                                                          or ("csv", "json"))
    out_dir.mkdir(parents=True, exist_ok=True)
    if config.mode == "stategen":
        body = _run_stategen(config, out_dir, formats)
    else:
        body = _run_correlations(config, out_dir, formats)
    manifest = {
        "tool": {"name": "anyonsim", "version": __version__},
        "mode": config.mode,
        "mask": config.mask,
        "phases": list(config.phases),
        "stem": config.stem,
        **body,
    }
    io.write_json(out_dir / f"{config.stem}_manifest.json", manifest)
    return manifest


def sample(config: ExperimentConfig | str, shots: int, seed: int,
           out_dir=None) -> dict:
    """Multinomial synthetic counts from the exact masked distribution."""
    if not isinstance(config, ExperimentConfig):
        config = load_config(config)
    if shots < 1:
        raise ConfigError(f"shots must be at least 1, got {shots}")
    if config.mode == "stategen":
        raise ConfigError("stategen mode has no distribution to sample")
    proc = resolve_process(config)
    if len(proc.input_indices) != 2:
        raise ConfigError("sampling writes pair-count files; it needs two inputs")
    out_dir = Path(out_dir if out_dir is not None else config.out_dir or "out")
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    phases = ((None,) if config.mode == "distinguishable" else config.phases)
    results = []
    slugs: list[str] = []
    for phi in phases:
        slug = "classical" if phi is None else phase_slug(phi, slugs)
        slugs.append(slug)
        full, _ = _correlation_for_phase(config, proc, phi)
        corr = _windowed(config, proc, full)
        weights = np.where(corr.mask, corr.values, 0.0).ravel()
        total = weights.sum()
        if total <= 0:
            raise ConfigError("masked distribution has no mass to sample")
        counts = rng.multinomial(shots, weights / total).reshape(corr.values.shape)
        path = out_dir / f"{config.stem}_{slug}.counts.csv"
        io.write_pair_matrix_csv(path, corr.labels, counts, corr.mask, integral=True)
        results.append({"phase": phi, "slug": slug, "file": path.name})
    manifest = {
        "tool": {"name": "anyonsim", "version": __version__},
        "kind": "sample_manifest",
        "shots": shots,
        "seed": seed,
        "stem": config.stem,
        "results": results,
    }
    io.write_json(out_dir / f"{config.stem}_sample_manifest.json", manifest)
    return manifest


def compare_files(path_a, path_b) -> dict:
    """Similarity and total variation of two matrix files on their shared mask."""
    labels_a, values_a, mask_a = io.load_pair_matrix(path_a)
    labels_b, values_b, mask_b = io.load_pair_matrix(path_b)
    if labels_a != labels_b:
        raise ComparisonError(
            f"mode labels differ: {labels_a} vs {labels_b}")
    shared = mask_a & mask_b
    return {
        "labels": labels_a,
        "compared_cells": int(shared.sum()),
        "similarity": similarity(values_a, values_b, shared),
        "total_variation": total_variation(values_a, values_b, shared),
    }
