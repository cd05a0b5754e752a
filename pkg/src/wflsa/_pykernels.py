"""Pure-numpy implementations of the hot kernels.

These mirror the compiled kernels in ``_cykernels.pyx`` and are selected at
import time when the extension is unavailable (see ``backend``).
"""
import numpy as np

BACKEND_NAME = "python"


def apply_d(ei, ej, ew, beta):
    """Signed-difference operator: entry t is ew[t] * (beta[ei[t]] - beta[ej[t]])."""
    return ew * (beta[ei] - beta[ej])


def apply_dt(ei, ej, ew, alpha, p):
    """Transpose of apply_d: scatter ew[t]*alpha[t] onto ei[t], negated onto ej[t]."""
    wa = ew * alpha
    return np.bincount(ei, weights=wa, minlength=p) - np.bincount(ej, weights=wa, minlength=p)


def admm_run(y, ei, ej, ew, lambda2, rho, q, eps, max_iter):
    """Full two-step iteration loop; returns (beta, iterations, converged, final_delta).

    Starts from beta and both dual vectors at zero, so the first pass sees a
    zero dual extrapolation term. Each pass updates beta, then the duals, then
    tests the l1 change in beta against eps.
    """
    p = y.shape[0]
    m = ew.shape[0]
    beta = np.zeros(p)
    alpha = np.zeros(m)
    alpha_prev = np.zeros(m)
    rq = rho * q
    inv = 1.0 / (rq + 1.0)
    step = rho * lambda2
    iterations = 0
    converged = False
    delta = 0.0
    while iterations < max_iter:
        s = 2.0 * alpha - alpha_prev
        dt = apply_dt(ei, ej, ew, s, p)
        beta_next = (rq * beta + y - lambda2 * dt) * inv
        delta = float(np.abs(beta_next - beta).sum())
        alpha_next = np.clip(alpha + step * apply_d(ei, ej, ew, beta_next), -1.0, 1.0)
        beta = beta_next
        alpha_prev = alpha
        alpha = alpha_next
        iterations += 1
        if delta < eps:
            converged = True
            break
    return beta, iterations, converged, delta
