"""Weighted graphs and the implicit signed-difference operator.

A problem instance lives on an undirected graph over the p coefficients,
described by a symmetric non-negative weight matrix with zero diagonal. The
smoothness penalty sums w_ij * |beta_i - beta_j| over all pairs i < j, which
is the l1 norm of an oriented incidence operator applied to beta. That
operator has one row per pair (i, j) with i < j, holding +w_ij in column i
and -w_ij in column j; zero-weight pairs contribute identically-zero rows, so
only edges with positive weight are stored and applied.

Vertex indices are 0-based throughout the library; file formats and error
messages use 1-based labels (see ``fileio``).
"""
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .errors import (
    AsymmetricMatrixError,
    DimensionMismatchError,
    NegativeWeightError,
    NonSquareError,
    NonzeroDiagonalError,
)

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class WeightMatrix:
    """Validated symmetric non-negative weight matrix with zero diagonal.

    Construct through :func:`weight_matrix_validate`; instances are immutable
    and safe to share across threads.
    """

    p: int
    w: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.w.setflags(write=False)


@dataclass(frozen=True)
class EdgeList:
    """Edges with positive weight, sorted lexicographically by (i, j), i < j.

    The arrays ``i_idx``, ``j_idx`` and ``weights`` have one entry per edge
    and are the implicit rows of the signed-difference operator.
    """

    p: int
    i_idx: np.ndarray = field(repr=False)
    j_idx: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        for a in (self.i_idx, self.j_idx, self.weights):
            a.setflags(write=False)

    def __len__(self):
        return self.weights.shape[0]

    @property
    def m(self):
        return self.weights.shape[0]


@dataclass(frozen=True)
class GramSummary:
    """Per-vertex sums of squared incident weights.

    Together with the weight matrix this determines the Gram matrix of the
    signed-difference operator: diag(diag) - W * W elementwise, without ever
    forming the operator.
    """

    p: int
    diag: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.diag.setflags(write=False)


def weight_matrix_validate(raw) -> WeightMatrix:
    """Validate a dense square array as a weight matrix.

    Checks symmetry (within 1e-12 absolute), non-negativity and a zero
    diagonal. The input is copied, never mutated. Indices in error messages
    are 1-based.
    """
    w = np.array(raw, dtype=np.float64, copy=True)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise NonSquareError(f"weight matrix must be square, got shape {w.shape}")
    p = w.shape[0]
    asym = np.abs(w - w.T)
    if asym.size and asym.max() > SYMMETRY_TOL:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise AsymmetricMatrixError(
            f"weight matrix asymmetric at ({i + 1}, {j + 1}): "
            f"{w[i, j]!r} vs {w[j, i]!r}"
        )
    if w.size and w.min() < 0:
        i, j = np.unravel_index(np.argmin(w), w.shape)
        raise NegativeWeightError(f"negative weight {w[i, j]!r} at ({i + 1}, {j + 1})")
    d = np.abs(np.diag(w))
    if d.size and d.max() != 0:
        i = int(np.argmax(d))
        raise NonzeroDiagonalError(f"nonzero diagonal entry {w[i, i]!r} at ({i + 1}, {i + 1})")
    return WeightMatrix(p=p, w=w)


def edge_list_from(w: WeightMatrix) -> EdgeList:
    """Extract the positive-weight edges of ``w`` in lexicographic (i, j) order."""
    ii, jj = np.triu_indices(w.p, k=1)
    vals = w.w[ii, jj]
    keep = vals > 0
    return EdgeList(
        p=w.p,
        i_idx=ii[keep].astype(np.int64),
        j_idx=jj[keep].astype(np.int64),
        weights=vals[keep].astype(np.float64),
    )


def apply_D(e: EdgeList, beta) -> np.ndarray:
    """Apply the signed-difference operator: entry for edge (i, j) is
    w_ij * (beta[i] - beta[j]). Runs in O(m) without materializing anything."""
    beta = np.ascontiguousarray(beta, dtype=np.float64)
    if beta.ndim != 1 or beta.shape[0] != e.p:
        raise DimensionMismatchError(f"expected beta of length {e.p}, got shape {beta.shape}")
    return backend.apply_d(e.i_idx, e.j_idx, e.weights, beta)


def apply_Dt(e: EdgeList, alpha) -> np.ndarray:
    """Apply the transposed operator: edge (i, j) with dual value a adds
    w_ij * a to component i and subtracts it from component j. O(m) time."""
    alpha = np.ascontiguousarray(alpha, dtype=np.float64)
    if alpha.ndim != 1 or alpha.shape[0] != e.m:
        raise DimensionMismatchError(f"expected alpha of length {e.m}, got shape {alpha.shape}")
    return backend.apply_dt(e.i_idx, e.j_idx, e.weights, alpha, e.p)


def gram_summary(w: WeightMatrix) -> GramSummary:
    """Column sums of squared weights; the Gram diagonal of the operator."""
    return GramSummary(p=w.p, diag=(w.w ** 2).sum(axis=0))


def gershgorin_q_bound(w: WeightMatrix, lambda2: float) -> float:
    """Upper bound on the largest eigenvalue of lambda2^2 times the operator
    Gram matrix.

    Each Gram row has absolute sum 2 * wbar_l, so by the Gershgorin circle
    theorem the spectrum is bounded by 2 * lambda2^2 * max_l wbar_l. O(p^2).
    """
    diag = gram_summary(w).diag
    top = float(diag.max()) if diag.size else 0.0
    return 2.0 * float(lambda2) ** 2 * top
