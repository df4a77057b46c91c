"""Tests for model save/load: reloaded models must predict identically."""

import numpy as np
import pytest

from srplearn.distance import KIND_JACCARD, KIND_SQEUCLIDEAN
from srplearn.elm import elm_fit, model_predict, rbf_fit, rvfl_fit
from srplearn.logreg import logreg_fit, logreg_predict
from srplearn.persistence import load_model, save_model
from srplearn.sparse import SparseBinaryMatrix


def _random_sparse(rng, n_rows, n_cols, density):
    rows = [np.flatnonzero(rng.random(n_cols) < density) for _ in range(n_rows)]
    return SparseBinaryMatrix.from_rows(rows, n_cols)


def _labels(rng, n):
    y = np.where(rng.random(n) > 0.5, 1.0, -1.0)
    y[0], y[1] = 1.0, -1.0
    return y


class TestElmRoundTrip:
    def test_predictions_bit_identical(self, tmp_path):
        rng = np.random.default_rng(0)
        X = _random_sparse(rng, 40, 200, 0.1)
        y = _labels(rng, 40)
        model = elm_fit(X, y, 24, seed=5)
        prefix = str(tmp_path / "elm")
        save_model(model, prefix)
        back = load_model(prefix)
        X_new = _random_sparse(rng, 15, 200, 0.1)
        assert np.array_equal(model_predict(model, X_new), model_predict(back, X_new))
        assert back.solution.lam == model.solution.lam
        assert back.solution.press_value == model.solution.press_value

    def test_rvfl_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        X = _random_sparse(rng, 30, 150, 0.1)
        y = _labels(rng, 30)
        model = rvfl_fit(X, y, 16, d_lin=6, seed=3)
        prefix = str(tmp_path / "rvfl")
        save_model(model, prefix)
        back = load_model(prefix)
        X_new = _random_sparse(rng, 10, 150, 0.1)
        assert np.array_equal(model_predict(model, X_new), model_predict(back, X_new))
        assert back.linear_part.output_dim == 6


class TestRbfRoundTrip:
    def test_dense_centroids(self, tmp_path):
        rng = np.random.default_rng(2)
        F = rng.standard_normal((50, 12))
        y = _labels(rng, 50)
        model = rbf_fit(F, y, 10, KIND_SQEUCLIDEAN, seed=7)
        prefix = str(tmp_path / "rbf")
        save_model(model, prefix)
        back = load_model(prefix)
        F_new = rng.standard_normal((8, 12))
        assert np.array_equal(model_predict(model, F_new), model_predict(back, F_new))
        assert np.array_equal(back.gammas, model.gammas)
        assert np.array_equal(back.centroids, model.centroids)

    def test_sparse_centroids(self, tmp_path):
        rng = np.random.default_rng(3)
        X = _random_sparse(rng, 60, 80, 0.15)
        y = _labels(rng, 60)
        model = rbf_fit(X, y, 20, KIND_JACCARD, seed=9)
        prefix = str(tmp_path / "rbfj")
        save_model(model, prefix)
        back = load_model(prefix)
        X_new = _random_sparse(rng, 12, 80, 0.15)
        assert np.array_equal(model_predict(model, X_new), model_predict(back, X_new))
        assert back.centroids == model.centroids


class TestLogRegRoundTrip:
    def test_predictions_bit_identical(self, tmp_path):
        rng = np.random.default_rng(4)
        F = rng.standard_normal((40, 6))
        y = _labels(rng, 40)
        model = logreg_fit(F, y, 0.05, max_iter=300)
        prefix = str(tmp_path / "lr")
        save_model(model, prefix)
        back = load_model(prefix)
        F_new = rng.standard_normal((9, 6))
        assert np.array_equal(logreg_predict(model, F_new), logreg_predict(back, F_new))
        assert back.lam == model.lam
        assert back.converged == model.converged
        assert back.iterations == model.iterations


class TestErrors:
    def test_unknown_model_type(self, tmp_path):
        with pytest.raises(TypeError):
            save_model(object(), str(tmp_path / "x"))

    def test_unknown_kind_on_load(self, tmp_path):
        (tmp_path / "x.meta").write_text("kind=mystery\n")
        with pytest.raises(ValueError):
            load_model(str(tmp_path / "x"))
