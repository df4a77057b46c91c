"""Kernel ridge regression and k-nearest-neighbor classification.

KRR is solved in the dual, (K + lambda I) alpha = y, with the penalty
chosen by the same leave-one-out identity as the primal ridge solver:
the LOO residual of sample i is (y_i - yhat_i) / (1 - h_ii) where the
leverage h_ii is the i-th diagonal of K (K + lambda I)^-1.

kNN consumes a precomputed distance matrix and depends on distance ranks
only, so any strictly monotone transform of the distances is equivalent.
"""

from __future__ import annotations

import numpy as np

from .distance import DistanceMatrix, jaccard_distance_matrix
from .exceptions import DegenerateFitError
from .ridge import default_lambda_grid
from .sparse import SparseBinaryMatrix

__all__ = [
    "KrrModel",
    "KnnModel",
    "kernel_matrix",
    "krr_fit",
    "krr_predict",
    "krr_predict_kernel",
    "knn_predict",
]

KERNEL_LINEAR = "linear-srp"
KERNEL_JACCARD = "jaccard-similarity"


class KrrModel:
    """Dual-form ridge model over a precomputed kernel."""

    __slots__ = (
        "alpha",
        "lam",
        "press_value",
        "lambda_grid",
        "kernel_kind",
        "training_rows",
    )

    def __init__(self, alpha, lam, press_value, lambda_grid, kernel_kind, training_rows):
        self.alpha = np.asarray(alpha, dtype=np.float64)
        self.lam = float(lam)
        self.press_value = float(press_value)
        self.lambda_grid = np.asarray(lambda_grid, dtype=np.float64)
        self.kernel_kind = kernel_kind
        self.training_rows = training_rows

    @property
    def n_train(self) -> int:
        return self.alpha.shape[0]

    def __repr__(self) -> str:
        return (
            f"KrrModel(n_train={self.n_train}, lam={self.lam:g}, "
            f"kernel={self.kernel_kind!r})"
        )


class KnnModel:
    """Training rows, labels and an odd neighbor count."""

    __slots__ = ("training_rows", "labels", "k", "distance_kind")

    def __init__(self, training_rows, labels, k, distance_kind):
        labels = np.asarray(labels)
        n = (
            training_rows.n_rows
            if isinstance(training_rows, SparseBinaryMatrix)
            else training_rows.shape[0]
        )
        if labels.shape != (n,):
            raise ValueError("one label per training row required")
        if not np.all(np.isin(np.unique(labels), (-1, 1))):
            raise ValueError("labels must be -1 or +1")
        _check_k(k, n)
        self.training_rows = training_rows
        self.labels = labels.astype(np.float64)
        self.k = int(k)
        self.distance_kind = distance_kind


def _check_k(k: int, n_train: int) -> None:
    if k % 2 == 0:
        raise ValueError("k must be odd")
    if not 1 <= k <= n_train:
        raise ValueError(f"k must be in [1, {n_train}], got {k}")


def kernel_matrix(kind: str, rows_a, rows_b) -> np.ndarray:
    """Kernel values between all rows of A and all rows of B.

    "linear-srp": plain inner products of dense feature rows.
    "jaccard-similarity": 1 - J on sparse binary rows (1 on identical
    nonempty rows, 0 on disjoint ones).
    """
    if kind == KERNEL_LINEAR:
        a = np.asarray(rows_a, dtype=np.float64)
        b = np.asarray(rows_b, dtype=np.float64)
        if a.ndim != 2 or b.ndim != 2:
            raise ValueError("linear kernel expects 2-D feature arrays")
        if a.shape[1] != b.shape[1]:
            raise ValueError(
                f"feature dimensions differ: {a.shape[1]} vs {b.shape[1]}"
            )
        return a @ b.T
    if kind == KERNEL_JACCARD:
        if not (
            isinstance(rows_a, SparseBinaryMatrix)
            and isinstance(rows_b, SparseBinaryMatrix)
        ):
            raise TypeError("jaccard kernel expects sparse binary matrices")
        return 1.0 - jaccard_distance_matrix(rows_a, rows_b).values
    raise ValueError(f"unknown kernel kind: {kind!r}")


def krr_fit(
    K,
    y,
    lambda_grid=None,
    kernel_kind: str = "precomputed",
    training_rows=None,
) -> KrrModel:
    """Fit dual ridge on an N x N kernel with leave-one-out penalty choice.

    ``training_rows`` (optional) lets :func:`krr_predict` rebuild test
    kernels later; prediction from an explicit cross-kernel never needs it.
    """
    K = np.asarray(K, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("K must be square")
    if y.ndim != 1 or y.size != K.shape[0]:
        raise ValueError("y must be a vector with one entry per kernel row")
    asym = np.max(np.abs(K - K.T)) if K.size else 0.0
    if asym > 1e-8:
        raise ValueError(f"kernel matrix is not symmetric (max gap {asym:g})")
    if lambda_grid is None:
        lambda_grid = default_lambda_grid()
    grid = np.asarray(lambda_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("lambda_grid must be a nonempty 1-D sequence")
    if np.any(grid < 0) or not np.all(np.isfinite(grid)):
        raise ValueError("lambda_grid entries must be finite and >= 0")

    w, Q = np.linalg.eigh((K + K.T) / 2.0)
    c = Q.T @ y
    Q2 = Q * Q

    press = np.empty(grid.size, dtype=np.float64)
    alphas = []
    for gi, lam in enumerate(grid):
        denom = w + lam
        # treat a numerically singular K + lambda I as unusable for this lam
        if np.any(denom <= 1e-14 * max(1.0, float(np.max(np.abs(w))))):
            press[gi] = np.inf
            alphas.append(None)
            continue
        inv = 1.0 / denom
        alpha = Q @ (inv * c)
        inv_diag = Q2 @ inv              # diagonal of (K + lam I)^-1
        if np.any(inv_diag <= 0.0):
            press[gi] = np.inf
            alphas.append(None)
            continue
        loo_resid = alpha / inv_diag     # equals (y - yhat) / (1 - leverage)
        press[gi] = float(loo_resid @ loo_resid)
        alphas.append(alpha)

    finite = np.isfinite(press)
    if not np.any(finite):
        raise DegenerateFitError(
            "kernel system is numerically singular for every penalty in the grid"
        )
    best_val = np.min(press[finite])
    candidates = np.flatnonzero(press == best_val)
    best = int(candidates[np.argmax(grid[candidates])])
    return KrrModel(
        alphas[best], grid[best], press[best], grid, kernel_kind, training_rows
    )


def krr_predict_kernel(model: KrrModel, K_cross) -> np.ndarray:
    """Scores from an explicit (n_test, n_train) cross-kernel."""
    K_cross = np.asarray(K_cross, dtype=np.float64)
    if K_cross.ndim != 2 or K_cross.shape[1] != model.n_train:
        raise ValueError(
            f"cross-kernel must have {model.n_train} columns"
        )
    return K_cross @ model.alpha


def krr_predict(model: KrrModel, X_test) -> np.ndarray:
    """Scores for test rows; rebuilds the cross-kernel from training rows."""
    if model.training_rows is None:
        raise ValueError(
            "model stores no training rows; use krr_predict_kernel"
        )
    K_cross = kernel_matrix(model.kernel_kind, X_test, model.training_rows)
    return krr_predict_kernel(model, K_cross)


def knn_predict(D: DistanceMatrix | np.ndarray, labels, k: int) -> np.ndarray:
    """Mean label of the k nearest training rows for each test row.

    Neighbors are taken by ascending distance; equal distances resolve to
    the lower training index.  Scores lie in [-1, 1]; class is sign(score).
    """
    values = D.values if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("distance matrix must be 2-D")
    labels = np.asarray(labels)
    n_test, n_train = values.shape
    if labels.shape != (n_train,):
        raise ValueError("one label per training row required")
    if not np.all(np.isin(np.unique(labels), (-1, 1))):
        raise ValueError("labels must be -1 or +1")
    _check_k(k, n_train)
    # stable sort keeps equal-distance neighbors in index order
    order = np.argsort(values, axis=1, kind="stable")[:, :k]
    return labels.astype(np.float64)[order].mean(axis=1)
