"""Weighted fused lasso signal approximation over arbitrary graphs.

Fits beta minimizing

    0.5 * ||y - beta||_2^2 + lambda1 * ||beta||_1
        + lambda2 * sum_{i<j} w_ij * |beta_i - beta_j|

with a two-step iteration whose per-pass cost is linear in the number of
positive-weight edges. Includes a patch-wise image smoothing pipeline that
derives the weights from a noise-intensity map, slow reference solvers for
verification, and a small CLI (``wflsa solve | denoise | bench``).
"""
from .backend import BACKEND
from .errors import (
    AsymmetricMatrixError,
    DimensionMismatchError,
    EvenWindowError,
    NegativeWeightError,
    NonSquareError,
    NonzeroDiagonalError,
    ParseError,
    PatchLargerThanImageError,
    TooLargeError,
    WflsaError,
    WindowLargerThanImageError,
)
from .graph import (
    EdgeList,
    GramSummary,
    WeightMatrix,
    apply_D,
    apply_Dt,
    edge_list_from,
    gershgorin_q_bound,
    gram_summary,
    weight_matrix_validate,
)
from .imaging import (
    GrayImage,
    PatchSpec,
    denoise,
    gray_image,
    grid_weights,
    median_filter,
    psnr,
    radial_noise,
)
from .solver import (
    AdmmState,
    SolverConfig,
    Solution,
    alpha_update,
    beta_update,
    clamp_T,
    initial_state,
    lambda1_knots,
    rethreshold,
    soft_threshold,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "WflsaError",
    "NonSquareError",
    "AsymmetricMatrixError",
    "NegativeWeightError",
    "NonzeroDiagonalError",
    "DimensionMismatchError",
    "TooLargeError",
    "PatchLargerThanImageError",
    "EvenWindowError",
    "WindowLargerThanImageError",
    "ParseError",
    "WeightMatrix",
    "EdgeList",
    "GramSummary",
    "weight_matrix_validate",
    "edge_list_from",
    "apply_D",
    "apply_Dt",
    "gram_summary",
    "gershgorin_q_bound",
    "SolverConfig",
    "Solution",
    "AdmmState",
    "initial_state",
    "solve",
    "soft_threshold",
    "clamp_T",
    "beta_update",
    "alpha_update",
    "lambda1_knots",
    "rethreshold",
    "GrayImage",
    "PatchSpec",
    "gray_image",
    "radial_noise",
    "grid_weights",
    "denoise",
    "median_filter",
    "psnr",
    "__version__",
]
