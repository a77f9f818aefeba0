"""Flat-file serialisation of matrices, distributions and manifests.

Pair-correlation CSV files carry the header ``row,col,value,measurable``
with one line per ordered output pair; ``row``/``col`` are display labels
and values are rendered in decimal with 17 significant digits, enough to
round-trip IEEE doubles exactly.  Complex matrices use ``row,col,re,im``
with the same rendering.  The structured (JSON) exports mirror the CSV
fields and add both labelings plus raw and normalised values.

Writers are deterministic: equal inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ComparisonError, ConfigError

__all__ = [
    "fmt",
    "write_pair_matrix_csv",
    "read_pair_matrix_csv",
    "write_complex_matrix_csv",
    "write_json",
    "load_pair_matrix",
]


def fmt(x: float) -> str:
    """Decimal rendering with 17 significant digits."""
    return format(float(x), ".17g")


def write_pair_matrix_csv(path, labels, values, mask, integral: bool = False) -> None:
    values = np.asarray(values)
    mask = np.asarray(mask, dtype=bool)
    labels = [int(l) for l in labels]
    lines = ["row,col,value,measurable"]
    for i, lr in enumerate(labels):
        for j, lq in enumerate(labels):
            rendered = str(int(values[i, j])) if integral else fmt(values[i, j])
            flag = "true" if mask[i, j] else "false"
            lines.append(f"{lr},{lq},{rendered},{flag}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_pair_matrix_csv(path):
    """Parse a pair-matrix CSV back into (labels, values, mask)."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "row,col,value,measurable":
        raise ConfigError(f"{path} is not a pair-matrix CSV (bad header)")
    entries = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 4:
            raise ConfigError(f"{path}: malformed line {ln!r}")
        r, q = int(parts[0]), int(parts[1])
        entries[(r, q)] = (float(parts[2]), parts[3].strip().lower() == "true")
    labels = sorted({r for r, _ in entries} | {q for _, q in entries})
    size = len(labels)
    index = {l: i for i, l in enumerate(labels)}
    if len(entries) != size * size:
        raise ComparisonError(
            f"{path}: expected {size * size} pair entries, found {len(entries)}")
    values = np.zeros((size, size))
    mask = np.zeros((size, size), dtype=bool)
    for (r, q), (v, m) in entries.items():
        values[index[r], index[q]] = v
        mask[index[r], index[q]] = m
    return labels, values, mask


def write_complex_matrix_csv(path, matrix) -> None:
    matrix = np.asarray(matrix, dtype=complex)
    lines = ["row,col,re,im"]
    for r in range(matrix.shape[0]):
        for c in range(matrix.shape[1]):
            lines.append(f"{r},{c},{fmt(matrix[r, c].real)},{fmt(matrix[r, c].imag)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(path, document: dict) -> None:
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")


def complex_matrix_document(matrix) -> list:
    """Row-major nested lists of (re, im) pairs."""
    matrix = np.asarray(matrix, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in matrix]


def load_pair_matrix(path):
    """Read a pair matrix from CSV or structured JSON, as (labels, values, mask).

    JSON correlation documents contribute their raw values.
    """
    path = Path(path)
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        try:
            labels = [int(l) for l in doc["modes"]["labels"]]
            values = np.asarray(doc["raw"], dtype=float)
            mask = np.asarray(doc["measurable"], dtype=bool)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"{path} is not a correlation document ({exc})")
        if values.shape != (len(labels), len(labels)) or mask.shape != values.shape:
            raise ConfigError(f"{path}: inconsistent document shapes")
        return labels, values, mask
    return read_pair_matrix_csv(path)
