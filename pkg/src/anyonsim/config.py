"""Experiment configuration documents.

Configurations are JSON documents with the schema below.  Validation is
strict: unknown keys anywhere are errors, reported with the dotted path of
the offending field.

.. code-block:: none

    {
      "mode": "two_particle" | "n_particle" | "entangled_sim"
              | "distinguishable" | "stategen",
      "process": {                  # required except for mode = stategen
        "kind": "walk",
        "modes": int,               # number of waveguides M
        "beta": number,             # site propagation constant
        "coupling": number,         # nearest-neighbour coupling C
        "time": number,             # effective propagation time T
        "window": {"size": int} | {"labels": [int, ...]}   # optional
      } | {
        "kind": "inline",
        "entries": [[[re, im], ...], ...],                 # row-major matrix
        "labels": [int, ...]                               # optional
      },
      "inputs": [int, ...],         # display labels, strictly increasing
      "particles": int,             # stategen only
      "phases": [number | string, ...],   # radians; strings like "pi/4"
      "mask": "none" | "odd" | "even" | "both",            # default "none"
      "output": {                                          # all optional
        "stem": string,             # file-name prefix, default "run"
        "directory": string,        # default ./out (CLI --out overrides)
        "formats": ["csv", "structured"]
      },
      "reference": {                # compare against measured/sampled files
        "directory": string,
        "stem": string              # defaults to output.stem
      }
    }

Walk processes use display labels centred on the middle waveguide (label 0
at index M//2).  A window given as ``{"size": s}`` retains the s contiguous
labels starting at -(s//2).  Phase strings accept ``pi``, ``a*pi``,
``pi/b`` and ``a*pi/b`` (also without the ``*``), with optional sign.

Preset configurations ship with the package: fig3, fig4, beamsplitter-hom
and qutrit-n3.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .masks import MASK_PARITIES

__all__ = [
    "MODES",
    "PRESETS",
    "WalkProcessSpec",
    "InlineProcessSpec",
    "ReferenceSpec",
    "ExperimentConfig",
    "parse_phase",
    "load_config",
    "load_preset",
]

MODES = ("two_particle", "n_particle", "entangled_sim", "distinguishable", "stategen")
PRESETS = ("fig3", "fig4", "beamsplitter-hom", "qutrit-n3")

_PHASE_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?\s*\*?\s*pi(?:\s*/\s*(\d+(?:\.\d+)?))?$")


def parse_phase(value, path: str = "phases") -> float:
    """A phase in radians from a number or a 'pi'-style string."""
    if isinstance(value, bool):
        raise ConfigError(f"expected a number or string, got {value!r}", path)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip().lower()
        m = _PHASE_RE.match(text)
        if m:
            sign = -1.0 if m.group(1) == "-" else 1.0
            coef = float(m.group(2)) if m.group(2) else 1.0
            den = float(m.group(3)) if m.group(3) else 1.0
            return sign * coef * math.pi / den
        try:
            return float(text)
        except ValueError:
            raise ConfigError(f"cannot parse phase {value!r}", path)
    raise ConfigError(f"expected a number or string, got {type(value).__name__}", path)


@dataclass(frozen=True)
class WalkProcessSpec:
    modes: int
    beta: float
    coupling: float
    time: float
    window_labels: tuple[int, ...] | None  # None keeps all modes

    @property
    def label_offset(self) -> int:
        return self.modes // 2


@dataclass(frozen=True)
class InlineProcessSpec:
    entries: np.ndarray
    labels: tuple[int, ...] | None


@dataclass(frozen=True)
class ReferenceSpec:
    """Where to find measured or sampled counterpart files for a run.

    For each phase slug the runner looks for ``<stem>_<slug>.counts.csv``,
    then ``<stem>_<slug>.raw.csv``, then ``<stem>_<slug>.csv`` under
    ``directory`` and reports the similarity and total variation against
    the computed matrix on the shared measurable cells.
    """

    directory: str
    stem: str | None = None  # defaults to the run's own stem


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    process: WalkProcessSpec | InlineProcessSpec | None
    inputs: tuple[int, ...] | None  # display labels
    particles: int | None
    phases: tuple[float, ...]
    mask: str
    stem: str
    out_dir: str | None = None
    formats: tuple[str, ...] | None = None
    reference: ReferenceSpec | None = None


def _require_keys(doc: dict, allowed: dict, path: str) -> None:
    for key in doc:
        if key not in allowed:
            raise ConfigError("unknown key", f"{path}.{key}" if path else key)
    for key, required in allowed.items():
        if required and key not in doc:
            raise ConfigError("missing required key",
                              f"{path}.{key}" if path else key)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", path)
    return value


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", path)
    return float(value)


def _parse_window(doc, modes: int, path: str) -> tuple[int, ...]:
    if not isinstance(doc, dict):
        raise ConfigError("window must be an object", path)
    if "size" in doc and "labels" in doc:
        raise ConfigError("give either size or labels, not both", path)
    _require_keys(doc, {"size": False, "labels": False}, path)
    offset = modes // 2
    if "size" in doc:
        size = _as_int(doc["size"], f"{path}.size")
        if not 1 <= size <= modes:
            raise ConfigError(f"window size must be in 1..{modes}", f"{path}.size")
        start = -(size // 2)
        labels = tuple(range(start, start + size))
    elif "labels" in doc:
        if not isinstance(doc["labels"], list) or not doc["labels"]:
            raise ConfigError("labels must be a non-empty list", f"{path}.labels")
        labels = tuple(_as_int(l, f"{path}.labels") for l in doc["labels"])
        if len(set(labels)) != len(labels):
            raise ConfigError("window labels must be distinct", f"{path}.labels")
    else:
        raise ConfigError("window needs size or labels", path)
    for l in labels:
        if not 0 <= l + offset < modes:
            raise ConfigError(f"label {l} outside the {modes}-mode array", path)
    return labels


def _parse_process(doc, path: str):
    if not isinstance(doc, dict):
        raise ConfigError("process must be an object", path)
    kind = doc.get("kind")
    if kind == "walk":
        _require_keys(doc, {"kind": True, "modes": True, "beta": True,
                            "coupling": True, "time": True, "window": False}, path)
        modes = _as_int(doc["modes"], f"{path}.modes")
        if modes < 1:
            raise ConfigError("modes must be positive", f"{path}.modes")
        window = None
        if "window" in doc:
            window = _parse_window(doc["window"], modes, f"{path}.window")
        return WalkProcessSpec(modes, _as_number(doc["beta"], f"{path}.beta"),
                               _as_number(doc["coupling"], f"{path}.coupling"),
                               _as_number(doc["time"], f"{path}.time"), window)
    if kind == "inline":
        _require_keys(doc, {"kind": True, "entries": True, "labels": False}, path)
        entries = doc["entries"]
        try:
            pairs = np.asarray(entries, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError("entries must be nested [re, im] pairs", f"{path}.entries")
        if pairs.ndim != 3 or pairs.shape[2] != 2 or pairs.shape[0] == 0:
            raise ConfigError("entries must be a matrix of [re, im] pairs",
                              f"{path}.entries")
        matrix = pairs[..., 0] + 1j * pairs[..., 1]
        labels = None
        if "labels" in doc:
            labels = tuple(_as_int(l, f"{path}.labels") for l in doc["labels"])
            if len(labels) != matrix.shape[0]:
                raise ConfigError(f"{len(labels)} labels for {matrix.shape[0]} rows",
                                  f"{path}.labels")
        return InlineProcessSpec(matrix, labels)
    raise ConfigError("kind must be 'walk' or 'inline'", f"{path}.kind")


def validate_config(doc) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    _require_keys(doc, {"mode": True, "process": False, "inputs": False,
                        "particles": False, "phases": True, "mask": False,
                        "output": False, "reference": False}, "")
    mode = doc["mode"]
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}", "mode")

    if not isinstance(doc["phases"], list) or not doc["phases"]:
        raise ConfigError("phases must be a non-empty list", "phases")
    phases = tuple(parse_phase(p, f"phases[{i}]") for i, p in enumerate(doc["phases"]))

    mask = doc.get("mask", "none")
    if mask not in MASK_PARITIES:
        raise ConfigError(f"mask must be one of {MASK_PARITIES}, got {mask!r}", "mask")

    stem, out_dir, formats = "run", None, None
    if "output" in doc:
        if not isinstance(doc["output"], dict):
            raise ConfigError("output must be an object", "output")
        _require_keys(doc["output"], {"stem": False, "directory": False,
                                      "formats": False}, "output")
        if "stem" in doc["output"]:
            stem = doc["output"]["stem"]
            if not isinstance(stem, str) or not re.fullmatch(r"[A-Za-z0-9._-]+", stem):
                raise ConfigError("stem must be a simple file-name fragment",
                                  "output.stem")
        if "directory" in doc["output"]:
            out_dir = doc["output"]["directory"]
            if not isinstance(out_dir, str) or not out_dir:
                raise ConfigError("directory must be a non-empty string",
                                  "output.directory")
        if "formats" in doc["output"]:
            raw_formats = doc["output"]["formats"]
            if (not isinstance(raw_formats, list) or not raw_formats
                    or any(f not in ("csv", "structured") for f in raw_formats)):
                raise ConfigError("formats must list 'csv' and/or 'structured'",
                                  "output.formats")
            formats = tuple("json" if f == "structured" else f for f in raw_formats)

    reference = None
    if "reference" in doc:
        if not isinstance(doc["reference"], dict):
            raise ConfigError("reference must be an object", "reference")
        _require_keys(doc["reference"], {"directory": True, "stem": False},
                      "reference")
        ref_dir = doc["reference"]["directory"]
        if not isinstance(ref_dir, str) or not ref_dir:
            raise ConfigError("directory must be a non-empty string",
                              "reference.directory")
        ref_stem = doc["reference"].get("stem")
        if ref_stem is not None and not isinstance(ref_stem, str):
            raise ConfigError("stem must be a string", "reference.stem")
        reference = ReferenceSpec(ref_dir, ref_stem)

    particles = None
    if "particles" in doc:
        particles = _as_int(doc["particles"], "particles")
        if particles < 2:
            raise ConfigError("particles must be at least 2", "particles")

    if mode == "stategen":
        if particles is None:
            raise ConfigError("stategen mode requires 'particles'", "particles")
        if "process" in doc or "inputs" in doc:
            raise ConfigError("stategen mode takes no process or inputs", "mode")
        if reference is not None:
            raise ConfigError("stategen runs have no reference to compare",
                              "reference")
        return ExperimentConfig(mode, None, None, particles, phases, mask,
                                stem, out_dir, formats)

    if "process" not in doc:
        raise ConfigError(f"mode {mode!r} requires a process", "process")
    process = _parse_process(doc["process"], "process")

    if "inputs" not in doc:
        raise ConfigError(f"mode {mode!r} requires inputs", "inputs")
    if not isinstance(doc["inputs"], list) or len(doc["inputs"]) < 2:
        raise ConfigError("inputs must list at least two modes", "inputs")
    inputs = tuple(_as_int(l, "inputs") for l in doc["inputs"])
    if any(inputs[i] >= inputs[i + 1] for i in range(len(inputs) - 1)):
        raise ConfigError("inputs must be strictly increasing", "inputs")
    if mode == "two_particle" and len(inputs) != 2:
        raise ConfigError("mode 'two_particle' takes exactly two inputs", "inputs")
    if particles is not None and particles != len(inputs):
        raise ConfigError("particles must match the number of inputs", "particles")

    return ExperimentConfig(mode, process, inputs, len(inputs), phases, mask,
                            stem, out_dir, formats, reference)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}")
    return validate_config(doc)


def load_preset(name: str) -> ExperimentConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = resources.files("anyonsim.presets").joinpath(f"{name}.json").read_text()
    return validate_config(json.loads(text))
