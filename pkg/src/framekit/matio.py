"""Matrix file format: JSON with explicit shape and [re, im] pairs, row-major.

Example of a 1x2 matrix::

    {"rows": 1, "cols": 2, "data": [[1.0, 0.0], [0.5, -0.5]]}

Serialization uses Python's shortest round-trip float representation, so a
write/read cycle reproduces entries bit-exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import DomainError


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: not valid JSON ({exc})") from exc
    return matrix_from_dict(doc, str(path))


def matrix_from_dict(doc, origin: str = "matrix") -> np.ndarray:
    if not isinstance(doc, dict):
        raise DomainError(f"{origin}: expected a JSON object")
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"{origin}: missing or malformed rows/cols/data") from exc
    if rows < 1 or cols < 1:
        raise DomainError(f"{origin}: rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise DomainError(
            f"{origin}: data must hold rows*cols = {rows * cols} entries"
        )
    values = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise DomainError(f"{origin}: entry {i} is not an [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise DomainError(f"{origin}: entry {i} is not finite")
        values[i] = complex(re, im)
    return values.reshape(rows, cols)


def save_matrix(path, m) -> None:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise DomainError(f"can only save 2-D matrices, got shape {arr.shape}")
    doc = {
        "rows": arr.shape[0],
        "cols": arr.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in arr.reshape(-1)],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
