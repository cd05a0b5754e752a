"""Slow reference solvers used to cross-check the ADMM.

Everything here is deliberately naive and kept on an independent code path
from the production solver: the incidence operator is materialized as a dense
matrix, the objective is a double loop over all pairs, and the minimizer is a
proximal subgradient method with a golden-section polish. Size guards keep
these from being called on anything but desk-scale problems.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, TooLargeError
from .graph import WeightMatrix

MATERIALIZE_MAX_P = 64
ORACLE_MAX_P = 12

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DenseIncidence:
    """The full oriented incidence matrix, zero rows included.

    rows has one row per pair (i, j) with i < j, in lexicographic order:
    +w_ij at column i and -w_ij at column j. row_index maps each (i, j)
    pair to its 0-based row position.
    """

    rows: np.ndarray = field(repr=False)
    row_index: dict

    def __post_init__(self):
        self.rows.setflags(write=False)


def materialize_D(w: WeightMatrix) -> DenseIncidence:
    """Build the dense C(p,2) x p incidence matrix. Guarded to p <= 64."""
    p = w.p
    if p > MATERIALIZE_MAX_P:
        raise TooLargeError(
            f"refusing to materialize a dense incidence matrix for p={p} "
            f"(limit {MATERIALIZE_MAX_P})"
        )
    ii, jj = np.triu_indices(p, k=1)
    m = len(ii)
    rows = np.zeros((m, p), dtype=np.float64)
    vals = w.w[ii, jj]
    rows[np.arange(m), ii] = vals
    rows[np.arange(m), jj] = -vals
    row_index = {(int(i), int(j)): r for r, (i, j) in enumerate(zip(ii, jj))}
    return DenseIncidence(rows=rows, row_index=row_index)


def oracle_objective(y, beta, w: WeightMatrix, lambda1, lambda2):
    """Objective value via the plain double loop over all i < j pairs."""
    y = np.asarray(y, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    p = w.p
    if y.shape != (p,):
        raise DimensionMismatchError(f"expected y of length {p}, got shape {y.shape}")
    if beta.shape != (p,):
        raise DimensionMismatchError(f"expected beta of length {p}, got shape {beta.shape}")
    total = 0.5 * float(np.sum((y - beta) ** 2)) + lambda1 * float(np.abs(beta).sum())
    fused = 0.0
    for i in range(p):
        for j in range(i + 1, p):
            fused += w.w[i, j] * abs(beta[i] - beta[j])
    return total + lambda2 * fused


def _golden_min(f, lo, hi, tol=1e-13, max_iter=200):
    a, b = lo, hi
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def oracle_solve(y, w: WeightMatrix, lambda1, lambda2, tol=1e-6):
    """Minimize the objective without touching the ADMM code path.

    Proximal subgradient descent with eta0/sqrt(t) steps gets close; a
    coordinate-wise golden-section polish plus a matching polish over groups
    of already-fused coordinates finishes the job (plain coordinate descent
    stalls once neighbors have snapped together, because moving one
    coordinate alone out of a fused group never helps). Rounds repeat until
    the objective improves by less than tol * 1e-2.

    Guarded to p <= 12; this is a verification tool, not a solver.
    """
    y = np.asarray(y, dtype=np.float64)
    p = w.p
    if p > ORACLE_MAX_P:
        raise TooLargeError(f"oracle_solve is limited to p <= {ORACLE_MAX_P}, got p={p}")
    if y.shape != (p,):
        raise DimensionMismatchError(f"expected y of length {p}, got shape {y.shape}")

    D = materialize_D(w).rows

    def soft(lam, x):
        return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)

    def obj(v):
        return oracle_objective(y, v, w, lambda1, lambda2)

    def subgrad_phase(x, iters, eta0):
        best = x.copy()
        fbest = obj(best)
        for t in range(1, iters + 1):
            g = (x - y) + lambda2 * (D.T @ np.sign(D @ x))
            eta = eta0 / math.sqrt(t)
            x = soft(eta * lambda1, x - eta * g)
            if t % 50 == 0:
                fx = obj(x)
                if fx < fbest:
                    fbest, best = fx, x.copy()
        fx = obj(x)
        if fx < fbest:
            fbest, best = fx, x.copy()
        return best, fbest

    def coord_polish(x):
        x = x.copy()
        for i in range(p):
            others = np.delete(x, i)
            lo = min(0.0, y[i], others.min() if others.size else 0.0) - 1e-3
            hi = max(0.0, y[i], others.max() if others.size else 0.0) + 1e-3

            def f1(t, i=i):
                xi = x.copy()
                xi[i] = t
                return obj(xi)

            xi, fi = _golden_min(f1, lo, hi)
            if fi < obj(x):
                x[i] = xi
        return x, obj(x)

    def group_polish(x):
        x = x.copy()
        assigned = [False] * p
        groups = []
        for i in range(p):
            if assigned[i]:
                continue
            grp = [i]
            assigned[i] = True
            stack = [i]
            while stack:
                a = stack.pop()
                for b in range(p):
                    if not assigned[b] and w.w[a, b] > 0 and abs(x[a] - x[b]) < 1e-7:
                        assigned[b] = True
                        grp.append(b)
                        stack.append(b)
            groups.append(grp)
        for grp in groups:
            if len(grp) < 2:
                continue
            idx = np.array(grp)

            def fg(t, idx=idx):
                xg = x.copy()
                xg[idx] = t
                return obj(xg)

            lo = min(0.0, y[idx].min(), x.min()) - 1e-3
            hi = max(0.0, y[idx].max(), x.max()) + 1e-3
            tstar, ft = _golden_min(fg, lo, hi)
            if ft < obj(x):
                x[idx] = tstar
        return x, obj(x)

    gram_max = float((w.w ** 2).sum(axis=0).max()) if p else 0.0
    eta0 = 1.0 / (1.0 + lambda2 * math.sqrt(2.0 * gram_max + 1.0))
    x = soft(lambda1, y.copy())
    x, fx = subgrad_phase(x, 4000, eta0)
    prev = math.inf
    for rounds in range(60):
        x, fx = coord_polish(x)
        x, fx = group_polish(x)
        if prev - fx < tol * 1e-2:
            break
        prev = fx
        if rounds % 3 == 2:
            x, fx = subgrad_phase(x, 1500, eta0 / (rounds + 1))
    return x
