"""Plain-text persistence: numeric CSV matrices, small typed tables, and
key=value metadata files.

Floats are written with 17 significant digits, which round-trips float64
exactly, so every file re-read through this module reproduces the
original values bit for bit.
"""

from __future__ import annotations

import csv

import numpy as np

__all__ = [
    "format_float",
    "write_matrix_csv",
    "read_matrix_csv",
    "write_table_csv",
    "read_table_csv",
    "write_keyvalues",
    "read_keyvalues",
]


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def write_matrix_csv(path: str, matrix) -> None:
    """Write a 2-D float array as headerless comma-separated rows."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    if matrix.ndim != 2:
        raise ValueError("matrix must be 1-D or 2-D")
    with open(path, "w", encoding="utf-8") as handle:
        for row in matrix:
            handle.write(",".join(format_float(v) for v in row) + "\n")


def read_matrix_csv(path: str) -> np.ndarray:
    """Read a headerless numeric CSV as a 2-D float64 array."""
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            values = [float(tok) for tok in line.split(",")]
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise ValueError(
                    f"{path}:{line_no}: expected {width} columns, got {len(values)}"
                )
            rows.append(values)
    if not rows:
        return np.zeros((0, 0), dtype=np.float64)
    return np.asarray(rows, dtype=np.float64)


def write_table_csv(path: str, header, rows) -> None:
    """Write a header line plus rows of mixed str/int/float cells.

    Floats go through :func:`format_float`; everything else through str().
    """
    def cell(v):
        if isinstance(v, float):
            return format_float(v)
        return str(v)

    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([cell(v) for v in row])


def read_table_csv(path: str):
    """Read a table written by :func:`write_table_csv`.

    Returns (header, rows) with every cell as a string; callers convert
    the columns they need.
    """
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            return [], []
        rows = [row for row in reader if row]
    return header, rows


def write_keyvalues(path: str, mapping: dict) -> None:
    """One ``key=value`` line per entry; floats keep full precision.

    Floats use the shortest text that parses back to the same value, so
    sidecar files stay readable without losing exactness.
    """
    with open(path, "w", encoding="utf-8") as handle:
        for key, value in mapping.items():
            if isinstance(value, float):
                value = repr(value)
            handle.write(f"{key}={value}\n")


def read_keyvalues(path: str) -> dict:
    """Parse ``key=value`` lines; blank lines and # comments are skipped."""
    out = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
