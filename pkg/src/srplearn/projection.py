"""Ternary sparse random projections.

A projection maps ``input_dim`` sparse binary features to ``output_dim``
dense real features.  Each entry of the implicit projection matrix is
independently

    -sqrt(s / output_dim)  with probability 1 / (2 s)
    0                      with probability 1 - 1 / s
    +sqrt(s / output_dim)  with probability 1 / (2 s)

with ``s = 1 / density``.  Entries are generated by a counter-based
stream keyed on (seed, input row), so any row can be produced out of
order and regeneration from the same parameters is exact.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from .sparse import SparseBinaryMatrix

__all__ = [
    "SparseProjection",
    "default_density",
    "make_projection",
    "ternary_row",
    "apply_projection",
    "derive_seed",
]

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, stream: int) -> int:
    """Deterministic 64-bit child seed for an independent random stream."""
    ss = np.random.SeedSequence([seed & _MASK64, stream & _MASK64])
    return int(ss.generate_state(1, np.uint64)[0])


def default_density(input_dim: int) -> float:
    """Default projection density 1/sqrt(input_dim).

    Keeps the expected work per input row low while the projected output
    stays dense with few exact zeros.
    """
    if input_dim < 1:
        raise ValueError("input_dim must be >= 1")
    return 1.0 / math.sqrt(input_dim)


def ternary_row(seed: int, row_index: int, output_dim: int, density: float):
    """Nonzero pattern of one projection row.

    Returns (cols, signs): the strictly increasing column indices of the
    nonzero entries and their signs (+1.0 / -1.0).  Two fixed-length
    uniform draws per row (zero mask, then signs) make every entry a pure
    function of (seed, row_index, column).
    """
    rng = np.random.Generator(
        np.random.Philox(key=[seed & _MASK64, row_index & _MASK64])
    )
    u_zero = rng.random(output_dim)
    u_sign = rng.random(output_dim)
    cols = np.flatnonzero(u_zero < density)
    signs = np.where(u_sign[cols] < 0.5, 1.0, -1.0)
    return cols, signs


class SparseProjection:
    """Immutable ternary projection matrix in triplet form.

    Parameters
    ----------
    input_dim, output_dim : int
        Shape of the (implicit) projection matrix.
    density : float
        Probability that an entry is nonzero; ``s = 1/density``.
    seed : int
        Seed of the counter-based generator.
    rows, cols : int64 arrays
        Triplet coordinates, sorted by (row, col) with no duplicates.
    values : float64 array
        Entries, each exactly +magnitude or -magnitude where
        magnitude = sqrt(s / output_dim).
    """

    __slots__ = (
        "input_dim",
        "output_dim",
        "density",
        "s",
        "seed",
        "rows",
        "cols",
        "values",
        "_csr",
    )

    def __init__(self, input_dim, output_dim, density, seed, rows, cols, values):
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        values = np.ascontiguousarray(values, dtype=np.float64)
        if not (rows.shape == cols.shape == values.shape) or rows.ndim != 1:
            raise ValueError("rows, cols, values must be equal-length 1-D arrays")
        if input_dim < 1 or output_dim < 1:
            raise ValueError("projection dimensions must be >= 1")
        if not 0.0 < density <= 1.0:
            raise ValueError("density must be in (0, 1]")
        s = 1.0 / density
        magnitude = math.sqrt(s / output_dim)
        if values.size:
            if rows.min() < 0 or rows.max() >= input_dim:
                raise ValueError("row index out of range")
            if cols.min() < 0 or cols.max() >= output_dim:
                raise ValueError("column index out of range")
            if not np.all(np.abs(values) == magnitude):
                raise ValueError(
                    "every value must be exactly +/- sqrt(s/output_dim)"
                )
            key = rows * output_dim + cols
            if np.any(np.diff(key) <= 0):
                raise ValueError(
                    "triplets must be sorted by (row, col) with no duplicates"
                )
        object.__setattr__(self, "input_dim", int(input_dim))
        object.__setattr__(self, "output_dim", int(output_dim))
        object.__setattr__(self, "density", float(density))
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "seed", int(seed))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_csr", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparseProjection is immutable")

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.s / self.output_dim)

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    def to_scipy(self) -> sp.csr_matrix:
        """CSR form of the projection matrix (cached)."""
        if self._csr is None:
            csr = sp.csr_matrix(
                (self.values, (self.rows, self.cols)),
                shape=(self.input_dim, self.output_dim),
            )
            csr.sort_indices()
            object.__setattr__(self, "_csr", csr)
        return self._csr

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.input_dim, self.output_dim), dtype=np.float64)
        out[self.rows, self.cols] = self.values
        return out

    def metadata(self) -> dict:
        """The four values the projection is reproducible from."""
        return {
            "input_dim": self.input_dim,
            "output_dim": self.output_dim,
            "density": self.density,
            "seed": self.seed,
        }

    def __repr__(self) -> str:
        return (
            f"SparseProjection(input_dim={self.input_dim}, "
            f"output_dim={self.output_dim}, density={self.density}, "
            f"seed={self.seed}, nnz={self.nnz})"
        )


def make_projection(
    input_dim: int, output_dim: int, density: float | None = None, seed: int = 0
) -> SparseProjection:
    """Generate the ternary projection for the given parameters.

    ``density=None`` uses ``default_density(input_dim)``.  The result is a
    deterministic function of (input_dim, output_dim, density, seed).
    """
    if input_dim < 1 or output_dim < 1:
        raise ValueError("projection dimensions must be >= 1")
    if density is None:
        density = default_density(input_dim)
    if not 0.0 < density <= 1.0:
        raise ValueError("density must be in (0, 1]")
    magnitude = math.sqrt((1.0 / density) / output_dim)
    row_parts = []
    col_parts = []
    val_parts = []
    for i in range(input_dim):
        cols, signs = ternary_row(seed, i, output_dim, density)
        if cols.size:
            row_parts.append(np.full(cols.size, i, dtype=np.int64))
            col_parts.append(cols)
            val_parts.append(signs * magnitude)
    if row_parts:
        rows = np.concatenate(row_parts)
        cols = np.concatenate(col_parts)
        values = np.concatenate(val_parts)
    else:
        rows = np.empty(0, np.int64)
        cols = np.empty(0, np.int64)
        values = np.empty(0, np.float64)
    return SparseProjection(input_dim, output_dim, density, seed, rows, cols, values)


def apply_projection(X, P: SparseProjection) -> np.ndarray:
    """Project ``X`` (sparse binary or dense rows) to (n_rows, output_dim).

    Output is dense float64 with a fixed accumulation order, so it does
    not depend on worker count.
    """
    if isinstance(X, SparseBinaryMatrix):
        if X.n_cols != P.input_dim:
            raise ValueError(
                f"feature dimensions differ: {X.n_cols} vs {P.input_dim}"
            )
        if X.n_rows == 0:
            return np.zeros((0, P.output_dim), dtype=np.float64)
        product = X.to_scipy() @ P.to_scipy()
        return np.asarray(product.todense(), dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("dense input must be 2-D")
    if X.shape[1] != P.input_dim:
        raise ValueError(
            f"feature dimensions differ: {X.shape[1]} vs {P.input_dim}"
        )
    if X.shape[0] == 0:
        return np.zeros((0, P.output_dim), dtype=np.float64)
    return np.ascontiguousarray((P.to_scipy().T @ X.T).T)
