"""Two-step ADMM for weighted fused lasso signal approximation.

The objective is

    0.5 * ||y - beta||_2^2 + lambda1 * ||beta||_1
        + lambda2 * sum_{i<j} w_ij * |beta_i - beta_j|

for a symmetric non-negative weight matrix W. The sparsity penalty decouples:
solving once with lambda1 = 0 and soft-thresholding the result componentwise
yields the solution for every lambda1, so the iteration itself only handles
the smoothness term. Each pass updates beta from the extrapolated duals, then
clamps the dual step into [-1, 1], and stops when the l1 change in beta drops
below ``eps``.

The beta step divides by (rho * q + 1), where q must dominate the largest
eigenvalue of lambda2^2 times the operator Gram matrix; by default q is taken
from the Gershgorin bound with a tiny multiplicative margin. Convergence speed
is governed by rho * q: the default rho = 1 is fine when lambda2 is moderate,
but for large lambda2 (where q grows like lambda2^2) choosing rho near 1 / q
avoids vanishing step sizes.

Note that the stopping rule is an absolute l1 norm over all p coefficients;
``eps`` should be scaled accordingly when p is large.
"""
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import backend
from .errors import DimensionMismatchError
from .graph import EdgeList, WeightMatrix, apply_D, apply_Dt, edge_list_from, gershgorin_q_bound

Q_MARGIN = 1e-6
Q_FLOOR = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    """Penalties and iteration controls for :func:`solve`."""

    lambda1: float = 0.0
    lambda2: float = 0.0
    rho: float = 1.0
    eps: float = 1e-8
    max_iter: int = 100000
    q_override: Optional[float] = None

    def __post_init__(self):
        if self.lambda1 < 0:
            raise ValueError("lambda1 must be >= 0")
        if self.lambda2 < 0:
            raise ValueError("lambda2 must be >= 0")
        if self.rho <= 0:
            raise ValueError("rho must be > 0")
        if self.eps <= 0:
            raise ValueError("eps must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.q_override is not None and self.q_override <= 0:
            raise ValueError("q_override must be > 0")


@dataclass(frozen=True)
class Solution:
    """Fitted coefficients plus convergence diagnostics.

    ``beta`` is the estimate at the configured lambda1; ``beta_unthresholded``
    is the lambda1 = 0 estimate it was thresholded from, whose absolute values
    are the lambda1 knots of the solution path.
    """

    beta: np.ndarray = field(repr=False)
    beta_unthresholded: np.ndarray = field(repr=False)
    iterations: int
    converged: bool
    final_delta: float
    q_used: float
    objective: float
    _y: np.ndarray = field(repr=False)
    _edges: EdgeList = field(repr=False)
    _lambda1: float
    _lambda2: float

    def __post_init__(self):
        self.beta.setflags(write=False)
        self.beta_unthresholded.setflags(write=False)


def soft_threshold(lambda1, x):
    """Shrink ``x`` toward zero by ``lambda1``, zeroing it inside the dead zone.

    Works componentwise on arrays. Adding 0.0 at the end turns the -0.0 that
    sign() produces for negative inputs in the dead zone into a plain 0.0.
    """
    return np.sign(x) * np.maximum(np.abs(x) - lambda1, 0.0) + 0.0


def clamp_T(v):
    """Restrict each component of ``v`` to [-1, 1]."""
    return np.clip(v, -1.0, 1.0)


@dataclass
class AdmmState:
    """The two most recent primal and dual iterates, plus the counter.

    Internal bookkeeping for the stepwise update functions; the compiled loop
    keeps the same quantities in local buffers instead.
    """

    beta_prev: np.ndarray
    beta_curr: np.ndarray
    alpha_prev: np.ndarray
    alpha_curr: np.ndarray
    k: int


def initial_state(p: int, m: int) -> AdmmState:
    """Starting point: both beta iterates and both alpha iterates at zero."""
    return AdmmState(
        beta_prev=np.zeros(p),
        beta_curr=np.zeros(p),
        alpha_prev=np.zeros(m),
        alpha_curr=np.zeros(m),
        k=1,
    )


def beta_update(state: AdmmState, y, e: EdgeList, lambda2, rho, q):
    """One primal step: (rho*q*beta + y - lambda2 * Dt(2*alpha - alpha_prev)) / (rho*q + 1)."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (e.p,):
        raise DimensionMismatchError(f"expected y of length {e.p}, got shape {y.shape}")
    s = 2.0 * state.alpha_curr - state.alpha_prev
    dt = apply_Dt(e, s)
    rq = rho * q
    return (rq * state.beta_curr + y - lambda2 * dt) / (rq + 1.0)


def alpha_update(state: AdmmState, beta_next, e: EdgeList, lambda2, rho):
    """One dual step: clamp(alpha + rho * lambda2 * D(beta_next)) into [-1, 1]."""
    d = apply_D(e, beta_next)
    return clamp_T(state.alpha_curr + rho * lambda2 * d)


def advance(state: AdmmState, beta_next, alpha_next) -> None:
    """Rotate the iterates after a beta and alpha step."""
    state.beta_prev = state.beta_curr
    state.beta_curr = np.asarray(beta_next, dtype=np.float64)
    state.alpha_prev = state.alpha_curr
    state.alpha_curr = np.asarray(alpha_next, dtype=np.float64)
    state.k += 1


def _objective_via_edges(y, beta, e: EdgeList, lambda1, lambda2):
    fused = float(np.abs(apply_D(e, beta)).sum()) if e.m else 0.0
    return float(
        0.5 * np.sum((y - beta) ** 2) + lambda1 * np.abs(beta).sum() + lambda2 * fused
    )


def choose_q(w: WeightMatrix, cfg: SolverConfig) -> float:
    """The q actually used by :func:`solve`: the override when given, else the
    Gershgorin bound with a small margin, floored to keep the update defined
    when the bound is zero."""
    if cfg.q_override is not None:
        return float(cfg.q_override)
    return max(gershgorin_q_bound(w, cfg.lambda2) * (1.0 + Q_MARGIN), Q_FLOOR)


def solve(y, w: WeightMatrix, cfg: SolverConfig) -> Solution:
    """Minimize the penalized objective over the graph ``w``.

    Hitting ``max_iter`` is not an error; the returned Solution carries
    ``converged=False`` and the last l1 change in beta.
    """
    y = np.ascontiguousarray(y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != w.p:
        raise DimensionMismatchError(f"expected y of length {w.p}, got shape {y.shape}")
    e = edge_list_from(w)
    q = choose_q(w, cfg)

    if cfg.lambda2 == 0.0:
        # Smoothness penalty absent: the objective separates per coordinate
        # and thresholding y is exact. No iterations needed.
        beta0 = y.copy()
        iterations, converged, delta = 0, True, 0.0
    else:
        beta0, iterations, converged, delta = backend.admm_run(
            y, e.i_idx, e.j_idx, e.weights,
            cfg.lambda2, cfg.rho, q, cfg.eps, cfg.max_iter,
        )

    beta = soft_threshold(cfg.lambda1, beta0)
    return Solution(
        beta=beta,
        beta_unthresholded=beta0,
        iterations=int(iterations),
        converged=bool(converged),
        final_delta=float(delta),
        q_used=float(q),
        objective=_objective_via_edges(y, beta, e, cfg.lambda1, cfg.lambda2),
        _y=y,
        _edges=e,
        _lambda1=float(cfg.lambda1),
        _lambda2=float(cfg.lambda2),
    )


def lambda1_knots(sol: Solution) -> np.ndarray:
    """Per-coefficient lambda1 values below which the coefficient is active.

    Coefficient i is nonzero exactly when lambda1 < |beta_unthresholded[i]|,
    so sorting these gives the whole lambda1 solution path at fixed lambda2.
    """
    return np.abs(sol.beta_unthresholded)


def rethreshold(sol: Solution, lambda1_new: float) -> Solution:
    """Solution at a different lambda1, from the same lambda1 = 0 estimate.

    Pure post-processing; the iteration is not rerun.
    """
    if lambda1_new < 0:
        raise ValueError("lambda1 must be >= 0")
    beta = soft_threshold(lambda1_new, sol.beta_unthresholded)
    return replace(
        sol,
        beta=beta,
        objective=_objective_via_edges(sol._y, beta, sol._edges, lambda1_new, sol._lambda2),
        _lambda1=float(lambda1_new),
    )
