"""Per-iteration cost measurements for the solver kernels.

Each measurement builds a random complete graph at size p, runs a fixed
number of iterations (the convergence test is disabled by passing eps = 0),
and reports wall time per iteration. Fitting a line to log(time) against
log(p) gives the empirical cost exponent; the edge-list kernels should land
near 2 on complete graphs. For contrast, the same matvec done the obvious
way (a materialized dense incidence matrix walked with Python loops) is
timed at small sizes, where the exponent comes out near 3 because the row
count itself grows with p choose 2.

Results are plain dataclasses; formatting into CSV/JSON lives in the CLI.
"""
import time
from dataclasses import dataclass

import numpy as np

from . import backend
from .graph import edge_list_from, gershgorin_q_bound, weight_matrix_validate

NAIVE_SIZES = (32, 64, 128)


@dataclass(frozen=True)
class BenchRow:
    p: int
    mean_iter_time: float


@dataclass(frozen=True)
class BenchResult:
    iters: int
    seed: int
    structured: dict        # backend name -> list[BenchRow]
    naive: list             # list[BenchRow]
    slopes: dict            # series name -> fitted log-log slope, or None


def _random_complete(p, rng):
    raw = rng.uniform(0.1, 1.0, (p, p))
    raw = (raw + raw.T) / 2.0
    np.fill_diagonal(raw, 0.0)
    return weight_matrix_validate(raw)


def time_structured(p, iters, seed, kernels=None):
    """Seconds per iteration of the edge-list kernel at size p."""
    k = kernels if kernels is not None else backend
    rng = np.random.default_rng(seed)
    w = _random_complete(p, rng)
    y = rng.normal(0.0, 1.0, p)
    e = edge_list_from(w)
    lambda2 = 1.0
    q = gershgorin_q_bound(w, lambda2) * (1.0 + 1e-6)
    # warm-up pass so one-time costs (allocation, JIT-less but cache-cold
    # paths) stay out of the measurement
    k.admm_run(y, e.i_idx, e.j_idx, e.weights, lambda2, 1.0, q, 0.0, 3)
    t0 = time.perf_counter()
    k.admm_run(y, e.i_idx, e.j_idx, e.weights, lambda2, 1.0, q, 0.0, iters)
    return (time.perf_counter() - t0) / iters


def time_naive(p, iters, seed):
    """Seconds per application of D, with D materialized dense and the
    product computed by plain Python loops."""
    rng = np.random.default_rng(seed)
    w = _random_complete(p, rng)
    ii, jj = np.triu_indices(p, k=1)
    m = len(ii)
    D = [[0.0] * p for _ in range(m)]
    for r in range(m):
        i, j = int(ii[r]), int(jj[r])
        D[r][i] = float(w.w[i, j])
        D[r][j] = -float(w.w[i, j])
    beta = [float(v) for v in rng.normal(0.0, 1.0, p)]

    def matvec():
        out = [0.0] * m
        for r in range(m):
            row = D[r]
            s = 0.0
            for l in range(p):
                s += row[l] * beta[l]
            out[r] = s
        return out

    matvec()  # warm-up, same reason as in time_structured
    t0 = time.perf_counter()
    for _ in range(iters):
        matvec()
    return (time.perf_counter() - t0) / iters


def fit_slope(rows):
    """Least-squares slope of log(mean_iter_time) against log(p); None when
    fewer than two sizes were measured."""
    if len(rows) < 2:
        return None
    xs = np.log([r.p for r in rows])
    ys = np.log([r.mean_iter_time for r in rows])
    return float(np.polyfit(xs, ys, 1)[0])


def run_bench(sizes, iters=50, seed=0, naive_sizes=NAIVE_SIZES, naive_iters=20) -> BenchResult:
    """Measure every available kernel backend at the given sizes, plus the
    naive dense matvec at the (small) contrast sizes."""
    structured = {}
    for name in backend.available_backends():
        k = backend.get_kernels(name)
        structured[name] = [
            BenchRow(p=int(p), mean_iter_time=time_structured(int(p), iters, seed, k))
            for p in sizes
        ]
    naive = [
        BenchRow(p=int(p), mean_iter_time=time_naive(int(p), naive_iters, seed))
        for p in naive_sizes
    ]
    slopes = {name: fit_slope(rows) for name, rows in structured.items()}
    slopes["naive"] = fit_slope(naive)
    return BenchResult(
        iters=iters, seed=seed, structured=structured, naive=naive, slopes=slopes,
    )
