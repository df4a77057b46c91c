"""Ridge regression with closed-form leave-one-out model selection.

For a design matrix H and targets Y, the ridge solution at penalty l is
beta(l) = (H'H + l I)^-1 H'Y.  The leave-one-out residual of sample i is
(y_i - yhat_i) / (1 - h_ii) where h_ii is the i-th leverage, the diagonal
of H (H'H + l I)^-1 H'.  Summing its squared norm over samples gives the
exact retrain-every-fold cross-validation error without retraining; the
penalty is chosen by minimizing it over a grid.

One symmetric eigendecomposition of H'H is reused for every grid value.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DegenerateFitError

__all__ = ["RidgeSolution", "solve_ridge_press", "default_lambda_grid"]

# a leave-one-out denominator at or below this is treated as degenerate
_MIN_LOO_DENOM = 1e-12


def default_lambda_grid(min_exp: int = -20, max_exp: int = 20) -> np.ndarray:
    """Powers of two from 2**min_exp to 2**max_exp inclusive."""
    if max_exp < min_exp:
        raise ValueError("max_exp must be >= min_exp")
    return np.power(2.0, np.arange(min_exp, max_exp + 1))


class RidgeSolution:
    """Output weights plus the selected penalty.

    Fields: ``beta`` ((n_features, n_outputs) float64), ``lam`` (selected
    penalty, an element of ``lambda_grid``), ``press_value`` (minimal
    leave-one-out squared error over the grid), ``lambda_grid``.
    """

    __slots__ = ("beta", "lam", "press_value", "lambda_grid")

    def __init__(self, beta, lam, press_value, lambda_grid):
        self.beta = np.asarray(beta, dtype=np.float64)
        self.lam = float(lam)
        self.press_value = float(press_value)
        self.lambda_grid = np.asarray(lambda_grid, dtype=np.float64)

    def __repr__(self) -> str:
        return (
            f"RidgeSolution(shape={self.beta.shape}, lam={self.lam:g}, "
            f"press={self.press_value:g})"
        )


def _select_lambda(press: np.ndarray, grid: np.ndarray) -> int:
    """Index of the minimal PRESS; exact ties go to the larger penalty."""
    finite = np.isfinite(press)
    if not np.any(finite):
        raise DegenerateFitError(
            "leave-one-out error is degenerate for every penalty in the grid"
        )
    best = np.min(press[finite])
    candidates = np.flatnonzero(press == best)
    return int(candidates[np.argmax(grid[candidates])])


def solve_ridge_press(H, Y, lambda_grid) -> RidgeSolution:
    """Ridge solution with the penalty minimizing leave-one-out error.

    Parameters
    ----------
    H : (n_samples, n_features) array
    Y : (n_samples,) or (n_samples, n_outputs) array
    lambda_grid : nonempty sequence of penalties >= 0

    A grid value whose leverages reach 1 (leave-one-out undefined) gets
    infinite error rather than failing; if that happens for the whole
    grid a DegenerateFitError is raised.
    """
    H = np.asarray(H, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[:, None]
    if H.ndim != 2 or Y.ndim != 2:
        raise ValueError("H and Y must be 2-D")
    if H.shape[0] != Y.shape[0]:
        raise ValueError(
            f"row counts differ: {H.shape[0]} vs {Y.shape[0]}"
        )
    grid = np.asarray(lambda_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("lambda_grid must be a nonempty 1-D sequence")
    if np.any(grid < 0) or not np.all(np.isfinite(grid)):
        raise ValueError("lambda_grid entries must be finite and >= 0")

    gram = H.T @ H
    w, Q = np.linalg.eigh(gram)
    T = H @ Q                      # H = T Q'
    C = T.T @ Y                    # equals Q' H' Y
    T2 = T * T

    press = np.empty(grid.size, dtype=np.float64)
    betas = []
    for gi, lam in enumerate(grid):
        denom = w + lam
        if np.any(denom <= 0):
            press[gi] = np.inf
            betas.append(None)
            continue
        inv = 1.0 / denom
        coef = inv[:, None] * C
        fitted = T @ coef
        leverage = T2 @ inv
        loo_denom = 1.0 - leverage
        if np.any(loo_denom <= _MIN_LOO_DENOM):
            press[gi] = np.inf
            betas.append(None)
            continue
        resid = (Y - fitted) / loo_denom[:, None]
        press[gi] = float(np.sum(resid * resid))
        betas.append(Q @ coef)

    best = _select_lambda(press, grid)
    return RidgeSolution(betas[best], grid[best], press[best], grid)
