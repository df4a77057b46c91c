"""Benchmark harness: repeated-subsample runs and projection-dimension sweeps.

Protocol per benchmark: one fixed projection (all methods see the same
projected representation), one tuning subsample (seed ``base_seed - 1``)
used to pick the logistic-regression penalty, then ``n_runs`` training
subsamples with seeds ``base_seed + run_index``, every configured method
fit on each and scored on the fixed test set.

Runs may execute on several worker threads (``SRPLEARN_WORKERS``); each
run derives all its randomness from its own seed and results are
aggregated by run index, so artifacts on disk are identical for any
worker count.  Wall-clock timings are inherently non-repeatable and are
reported only in ``report.txt``, never in the CSV outputs.
"""

from __future__ import annotations

import os
import time
import warnings
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import BENCH_METHODS, SWEEP_METHODS, RunConfig
from .datasets import Dataset, read_svmlight, subsample_indices, synth_generate
from .distance import (
    KIND_JACCARD,
    KIND_SQEUCLIDEAN,
    jaccard_distance_matrix,
    squared_euclidean_distance_matrix,
)
from .elm import elm_fit, model_predict, rbf_fit, rvfl_fit
from .exceptions import DegenerateFitError, NumericalDivergenceError
from .kernel import (
    KERNEL_JACCARD,
    KERNEL_LINEAR,
    kernel_matrix,
    knn_predict,
    krr_fit,
    krr_predict_kernel,
)
from .logreg import logreg_fit, logreg_predict, logreg_select_lambda
from .matio import read_matrix_csv, write_table_csv
from .metrics import EvalReport, accuracy, format_report, roc_auc, summarize
from .projection import apply_projection, default_density, derive_seed, make_projection
from .sparse import SparseBinaryMatrix

__all__ = ["cmd_bench", "cmd_sweep", "worker_count", "WORKERS_ENV"]

WORKERS_ENV = "SRPLEARN_WORKERS"

# methods consuming the shared projected feature matrix; the remaining
# methods work on the raw sparse rows (ELM/RVFL build their own ternary
# layer, the jaccard variants need the binary sets themselves)
FEATURE_METHODS = {"rbf-srp", "krr-srp", "knn-srp", "logreg-srp"}

_RUN_COLUMNS = [
    "run",
    "seed",
    "method",
    "auc",
    "accuracy",
    "iterations",
    "converged",
    "error",
]


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, value)


@dataclass
class _RunData:
    """Everything one method invocation needs, read-only."""

    train: Dataset
    test: Dataset
    F_train: np.ndarray | None
    F_test: np.ndarray | None
    grid: np.ndarray
    seed: int
    params: dict
    n_train: int
    logreg_lambda: float | None
    width_override: int | None  # sweeps force the random-layer width


def _int_param(params, key, default):
    return int(params[key]) if key in params else default

def _float_param(params, key, default):
    return float(params[key]) if key in params else default


def _features_required(rd: _RunData):
    if rd.F_train is None or rd.F_test is None:
        raise ValueError("method requires projected features")
    return rd.F_train, rd.F_test


def _labels(ds: Dataset) -> np.ndarray:
    return ds.labels.astype(np.float64)


def _run_elm(rd: _RunData):
    L = rd.width_override or _int_param(rd.params, "L", 1000)
    density = _float_param(rd.params, "density", None) if "density" in rd.params else None
    model = elm_fit(rd.train.sparse, _labels(rd.train), L, density, rd.seed, rd.grid)
    return model_predict(model, rd.test.sparse), 0.0, 0, True


def _run_rvfl(rd: _RunData):
    L = rd.width_override or _int_param(rd.params, "L", 1000)
    density = _float_param(rd.params, "density", None) if "density" in rd.params else None
    d_lin = _int_param(rd.params, "d_lin", None) if "d_lin" in rd.params else None
    model = rvfl_fit(
        rd.train.sparse, _labels(rd.train), L, d_lin, density, rd.seed, rd.grid
    )
    return model_predict(model, rd.test.sparse), 0.0, 0, True


def _run_rbf_srp(rd: _RunData):
    F_train, F_test = _features_required(rd)
    L = _int_param(rd.params, "L", min(1000, rd.n_train))
    model = rbf_fit(F_train, _labels(rd.train), L, KIND_SQEUCLIDEAN, rd.seed, rd.grid)
    return model_predict(model, F_test), 0.0, 0, True


def _run_rbf_jaccard(rd: _RunData):
    L = _int_param(rd.params, "L", min(1000, rd.n_train))
    model = rbf_fit(
        rd.train.sparse, _labels(rd.train), L, KIND_JACCARD, rd.seed, rd.grid
    )
    return model_predict(model, rd.test.sparse), 0.0, 0, True


def _run_krr_srp(rd: _RunData):
    F_train, F_test = _features_required(rd)
    K = kernel_matrix(KERNEL_LINEAR, F_train, F_train)
    model = krr_fit(K, _labels(rd.train), rd.grid, KERNEL_LINEAR)
    scores = krr_predict_kernel(model, kernel_matrix(KERNEL_LINEAR, F_test, F_train))
    return scores, 0.0, 0, True


def _run_krr_jaccard(rd: _RunData):
    K = kernel_matrix(KERNEL_JACCARD, rd.train.sparse, rd.train.sparse)
    model = krr_fit(K, _labels(rd.train), rd.grid, KERNEL_JACCARD)
    scores = krr_predict_kernel(
        model, kernel_matrix(KERNEL_JACCARD, rd.test.sparse, rd.train.sparse)
    )
    return scores, 0.0, 0, True


def _run_knn_srp(rd: _RunData):
    F_train, F_test = _features_required(rd)
    k = _int_param(rd.params, "k", 1)
    D = squared_euclidean_distance_matrix(F_test, F_train)
    return knn_predict(D, _labels(rd.train), k), 0.0, 0, True


def _run_knn_jaccard(rd: _RunData):
    k = _int_param(rd.params, "k", 1)
    D = jaccard_distance_matrix(rd.test.sparse, rd.train.sparse)
    return knn_predict(D, _labels(rd.train), k), 0.0, 0, True


def _run_logreg(rd: _RunData):
    F_train, F_test = _features_required(rd)
    if rd.logreg_lambda is None:
        raise ValueError("logistic regression penalty was not tuned")
    model = logreg_fit(
        F_train,
        _labels(rd.train),
        rd.logreg_lambda,
        _int_param(rd.params, "max_iter", 500),
        _float_param(rd.params, "tol", 1e-6),
    )
    scores = logreg_predict(model, F_test)
    return scores, 0.5, model.iterations, model.converged


METHOD_RUNNERS = {
    "elm-srp": _run_elm,
    "rvfl-srp": _run_rvfl,
    "rbf-srp": _run_rbf_srp,
    "krr-srp": _run_krr_srp,
    "knn-srp": _run_knn_srp,
    "logreg-srp": _run_logreg,
    "rbf-jaccard": _run_rbf_jaccard,
    "krr-jaccard": _run_krr_jaccard,
    "knn-jaccard": _run_knn_jaccard,
}


def _method_seed(run_seed: int, name: str) -> int:
    return derive_seed(run_seed, zlib.crc32(name.encode("ascii")))


def _widen(matrix: SparseBinaryMatrix, n_cols: int) -> SparseBinaryMatrix:
    if matrix.n_cols == n_cols:
        return matrix
    return SparseBinaryMatrix(matrix.indptr, matrix.indices, n_cols)


def _load_data(cfg: RunConfig):
    """Returns (train_pool, test, external_features or None)."""
    d = cfg.data
    if d.kind == "synth":
        seed = d.seed if d.seed is not None else cfg.base_seed
        total = d.n_train_pool + d.n_test
        ds = synth_generate(
            total, d.n_features, d.density, d.signal_features, d.flip_prob, seed
        )
        pool = ds.take(np.arange(d.n_train_pool))
        test = ds.take(np.arange(d.n_train_pool, total))
        return pool, test, None
    pool = read_svmlight(d.train_path, d.dense_features, d.index_base, d.n_features)
    test = read_svmlight(d.test_path, d.dense_features, d.index_base, d.n_features)
    width = max(pool.n_sparse_features, test.n_sparse_features)
    pool = Dataset(_widen(pool.sparse, width), pool.dense, pool.labels, pool.name)
    test = Dataset(_widen(test.sparse, width), test.dense, test.labels, test.name)
    external = None
    if d.train_features or d.test_features:
        if not (d.train_features and d.test_features):
            raise ValueError(
                "precomputed features require both data.train_features and "
                "data.test_features"
            )
        f_pool = read_matrix_csv(d.train_features)
        f_test = read_matrix_csv(d.test_features)
        if f_pool.shape[0] != pool.n_samples or f_test.shape[0] != test.n_samples:
            raise ValueError("precomputed feature row counts do not match data")
        external = (f_pool, f_test)
    return pool, test, external


def _build_features(cfg, pool, test, dim, external):
    """Shared feature matrices for the feature-consuming methods.

    Returns (F_pool, F_test, density_used, zero_fraction).  The zero
    fraction of the projected block is a diagnostic for projection
    density choice.
    """
    density = cfg.srp_density
    if density is None:
        density = default_density(pool.n_sparse_features)
    if external is not None:
        f_pool, f_test = external
        zero_frac = float(np.mean(f_pool == 0.0)) if f_pool.size else 0.0
    else:
        seed = cfg.srp_seed if cfg.srp_seed is not None else cfg.base_seed
        P = make_projection(pool.n_sparse_features, dim, density, seed)
        f_pool = apply_projection(pool.sparse, P)
        f_test = apply_projection(test.sparse, P)
        zero_frac = float(np.mean(f_pool == 0.0)) if f_pool.size else 0.0
    if pool.dense is not None:
        f_pool = np.hstack([f_pool, pool.dense])
        f_test = np.hstack([f_test, test.dense])
    return f_pool, f_test, density, zero_frac


def _tune_logreg(cfg, pool, F_pool, grid):
    """Penalty chosen once on the tuning subsample (seed base_seed - 1)."""
    tune_seed = cfg.base_seed - 1
    idx = subsample_indices(pool.n_samples, cfg.n_train, tune_seed)
    params = cfg.method_params.get("logreg-srp", {})
    lam, _ = logreg_select_lambda(
        F_pool[idx],
        pool.labels[idx].astype(np.float64),
        grid,
        seed=tune_seed,
        max_iter=_int_param(params, "max_iter", 500),
        tol=_float_param(params, "tol", 1e-6),
    )
    return lam


def _run_block(cfg, pool, test, F_pool, F_test, methods, grid, logreg_lambda,
               width_override=None):
    """Execute all runs for one feature configuration; rows by run index."""
    n_pool = pool.n_samples
    if cfg.n_train > n_pool:
        raise ValueError(
            f"n_train={cfg.n_train} exceeds training pool of {n_pool}"
        )

    def one(run_index: int):
        run_seed = cfg.base_seed + run_index
        idx = subsample_indices(n_pool, cfg.n_train, run_seed)
        train = pool.take(idx)
        F_train = F_pool[idx] if F_pool is not None else None
        rows = []
        for name in methods:
            rd = _RunData(
                train=train,
                test=test,
                F_train=F_train,
                F_test=F_test,
                grid=grid,
                seed=_method_seed(run_seed, name),
                params=cfg.method_params.get(name, {}),
                n_train=cfg.n_train,
                logreg_lambda=logreg_lambda,
                width_override=width_override,
            )
            start = time.perf_counter()
            try:
                scores, threshold, iters, conv = METHOD_RUNNERS[name](rd)
                elapsed = time.perf_counter() - start
                rows.append(
                    {
                        "run": run_index,
                        "seed": run_seed,
                        "method": name,
                        "auc": roc_auc(scores, test.labels),
                        "accuracy": accuracy(scores, test.labels, threshold),
                        "iterations": iters,
                        "converged": int(conv),
                        "error": "",
                        "seconds": elapsed,
                    }
                )
            except (
                ValueError,
                DegenerateFitError,
                NumericalDivergenceError,
                np.linalg.LinAlgError,
            ) as exc:
                elapsed = time.perf_counter() - start
                message = " ".join(str(exc).split())
                warnings.warn(
                    f"method {name} failed on run {run_index}: {message}",
                    RuntimeWarning,
                )
                rows.append(
                    {
                        "run": run_index,
                        "seed": run_seed,
                        "method": name,
                        "auc": float("nan"),
                        "accuracy": float("nan"),
                        "iterations": 0,
                        "converged": 0,
                        "error": message,
                        "seconds": elapsed,
                    }
                )
        return rows

    workers = worker_count()
    if workers <= 1:
        blocks = [one(i) for i in range(cfg.n_runs)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            blocks = list(executor.map(one, range(cfg.n_runs)))
    return [row for block in blocks for row in block]


def _csv_row(row, with_dim=False):
    out = []
    if with_dim:
        out.append(row["dim"])
    out.extend(
        [
            row["run"],
            row["seed"],
            row["method"],
            float(row["auc"]),
            float(row["accuracy"]),
            row["iterations"],
            row["converged"],
            row["error"],
        ]
    )
    return out


def _aggregate(rows, methods, n_runs, alpha):
    """Build the report from per-run rows; incomplete methods are dropped."""
    auc_runs = {}
    acc_runs = {}
    times = {}
    for m in methods:
        ok = [r for r in rows if r["method"] == m and r["error"] == ""]
        if len(ok) != n_runs:
            warnings.warn(
                f"method {m} completed {len(ok)}/{n_runs} runs; "
                "excluded from the summary",
                RuntimeWarning,
            )
            continue
        auc_runs[m] = [r["auc"] for r in ok]
        acc_runs[m] = [r["accuracy"] for r in ok]
        times[m] = [r["seconds"] for r in ok]
    if not auc_runs:
        raise DegenerateFitError("every method failed; nothing to summarize")
    if n_runs >= 2:
        report = summarize(auc_runs, alpha, times)
    else:
        names = list(auc_runs.keys())
        means = {m: float(np.mean(auc_runs[m])) for m in names}
        best = max(names, key=lambda m: means[m])
        report = EvalReport(
            methods=names,
            auc_mean=means,
            auc_std={m: 0.0 for m in names},
            run_aucs={m: list(auc_runs[m]) for m in names},
            p_values=np.ones((0, 0)),
            best_set=[best],
            alpha=alpha,
            time_mean_s={m: float(np.mean(times[m])) for m in names},
        )
    return report, acc_runs


def _write_bench_artifacts(cfg, out_dir, rows, report, acc_runs, methods,
                           context_lines):
    os.makedirs(out_dir, exist_ok=True)
    write_table_csv(
        os.path.join(out_dir, "runs.csv"),
        _RUN_COLUMNS,
        [_csv_row(r) for r in rows],
    )
    summary_rows = []
    for m in report.methods:
        acc = acc_runs.get(m, [])
        acc_mean = float(np.mean(acc)) if acc else float("nan")
        acc_std = float(np.std(acc, ddof=1)) if len(acc) > 1 else 0.0
        summary_rows.append(
            [
                m,
                len(report.run_aucs[m]),
                float(report.auc_mean[m]),
                float(report.auc_std[m]),
                acc_mean,
                acc_std,
                int(m in report.best_set),
            ]
        )
    write_table_csv(
        os.path.join(out_dir, "summary.csv"),
        ["method", "n_runs", "auc_mean", "auc_std", "accuracy_mean",
         "accuracy_std", "best"],
        summary_rows,
    )
    if report.p_values.size:
        write_table_csv(
            os.path.join(out_dir, "pvalues.csv"),
            ["method"] + report.methods,
            [
                [m] + [float(v) for v in report.p_values[mi]]
                for mi, m in enumerate(report.methods)
            ],
        )
    failures = [r for r in rows if r["error"]]
    lines = ["benchmark report", ""]
    lines.extend(context_lines)
    lines.append("")
    lines.append(format_report(report))
    lines.append("")
    logreg_rows = [r for r in rows if r["method"] == "logreg-srp" and not r["error"]]
    if logreg_rows:
        iters = [r["iterations"] for r in logreg_rows]
        conv = sum(r["converged"] for r in logreg_rows)
        lines.append(
            f"logreg iterations: min={min(iters)} max={max(iters)}; "
            f"converged {conv}/{len(logreg_rows)} runs"
        )
    if failures:
        lines.append(f"failures: {len(failures)}")
        for r in failures:
            lines.append(
                f"  run {r['run']} {r['method']}: {r['error']}"
            )
    else:
        lines.append("failures: none")
    with open(os.path.join(out_dir, "report.txt"), "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def _context_lines(cfg, pool, test, methods, extras):
    lines = [
        f"data: {pool.name or cfg.data.kind} "
        f"(pool={pool.n_samples}, test={test.n_samples}, "
        f"sparse_features={pool.n_sparse_features}, "
        f"dense_features={pool.n_dense_features})",
        f"methods: {', '.join(methods)}",
        f"n_train={cfg.n_train} n_runs={cfg.n_runs} base_seed={cfg.base_seed}",
        f"lambda grid: 2^{cfg.lambda_min_exp} .. 2^{cfg.lambda_max_exp} "
        f"({cfg.lambda_max_exp - cfg.lambda_min_exp + 1} values)",
    ]
    lines.extend(extras)
    return lines


def cmd_bench(cfg: RunConfig) -> EvalReport:
    """Run the repeated-subsample benchmark and write artifacts to disk."""
    methods = cfg.resolved_methods(BENCH_METHODS)
    for m in methods:
        if m not in METHOD_RUNNERS:
            raise ValueError(f"unknown method {m!r}")
    pool, test, external = _load_data(cfg)
    grid = cfg.lambda_grid()
    extras = []
    F_pool = F_test = None
    if any(m in FEATURE_METHODS for m in methods):
        F_pool, F_test, density, zero_frac = _build_features(
            cfg, pool, test, cfg.srp_dim, external
        )
        source = "precomputed" if external is not None else "generated"
        extras.append(
            f"projection: dim={cfg.srp_dim} density={density:.6g} "
            f"seed={cfg.srp_seed if cfg.srp_seed is not None else cfg.base_seed} "
            f"({source}); exact-zero fraction of projected block: {zero_frac:.4f}"
        )
    logreg_lambda = None
    if "logreg-srp" in methods:
        logreg_lambda = _tune_logreg(cfg, pool, F_pool, grid)
        extras.append(
            f"logreg penalty tuned on subsample seed {cfg.base_seed - 1}: "
            f"lambda={logreg_lambda:.6g}"
        )
    rows = _run_block(cfg, pool, test, F_pool, F_test, methods, grid, logreg_lambda)
    report, acc_runs = _aggregate(rows, methods, cfg.n_runs, cfg.alpha)
    _write_bench_artifacts(
        cfg,
        cfg.out_dir,
        rows,
        report,
        acc_runs,
        methods,
        _context_lines(cfg, pool, test, methods, extras),
    )
    return report


def cmd_sweep(cfg: RunConfig):
    """Evaluate every configured method across the projection-dimension grid.

    The swept dimension doubles as the hidden width of ELM and RVFL; the
    feature-based methods get the projected representation recomputed at
    each dimension.  Returns the per-run rows written to sweep.csv.
    """
    methods = cfg.resolved_methods(SWEEP_METHODS)
    for m in methods:
        if m not in METHOD_RUNNERS:
            raise ValueError(f"unknown method {m!r}")
    pool, test, external = _load_data(cfg)
    if external is not None:
        raise ValueError(
            "sweeps recompute projections per dimension; precomputed "
            "features are only supported by bench"
        )
    grid = cfg.lambda_grid()
    need_features = any(m in FEATURE_METHODS for m in methods)
    all_rows = []
    extras = []
    for dim in cfg.sweep_dims:
        F_pool = F_test = None
        if need_features:
            F_pool, F_test, density, zero_frac = _build_features(
                cfg, pool, test, dim, None
            )
            extras.append(
                f"dim {dim}: projection density={density:.6g}, "
                f"exact-zero fraction {zero_frac:.4f}"
            )
        logreg_lambda = None
        if "logreg-srp" in methods:
            logreg_lambda = _tune_logreg(cfg, pool, F_pool, grid)
            extras.append(f"dim {dim}: logreg lambda={logreg_lambda:.6g}")
        rows = _run_block(
            cfg, pool, test, F_pool, F_test, methods, grid, logreg_lambda,
            width_override=dim,
        )
        for r in rows:
            r["dim"] = dim
        all_rows.extend(rows)
    os.makedirs(cfg.out_dir, exist_ok=True)
    write_table_csv(
        os.path.join(cfg.out_dir, "sweep.csv"),
        ["dim"] + _RUN_COLUMNS,
        [_csv_row(r, with_dim=True) for r in all_rows],
    )
    lines = ["sweep report", ""]
    lines.extend(_context_lines(cfg, pool, test, methods, extras))
    lines.append("")
    lines.append(f"{'dim':>6}  {'method':<14} {'auc_mean':>9} {'time_s':>8}")
    for dim in cfg.sweep_dims:
        for m in methods:
            ok = [
                r
                for r in all_rows
                if r["dim"] == dim and r["method"] == m and r["error"] == ""
            ]
            if not ok:
                lines.append(f"{dim:>6}  {m:<14} {'failed':>9} {'-':>8}")
                continue
            auc_mean = float(np.mean([r["auc"] for r in ok]))
            t_mean = float(np.mean([r["seconds"] for r in ok]))
            lines.append(f"{dim:>6}  {m:<14} {auc_mean:9.4f} {t_mean:8.1f}")
    with open(os.path.join(cfg.out_dir, "report.txt"), "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    return all_rows
