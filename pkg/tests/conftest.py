import numpy as np

from wflsa import WeightMatrix, weight_matrix_validate


def random_weights(rng, p, sparsify=0.4) -> WeightMatrix:
    """A random valid weight matrix; entries below ``sparsify`` are dropped
    so the graph is usually not complete."""
    raw = rng.uniform(0.0, 1.0, (p, p))
    raw = (raw + raw.T) / 2.0
    np.fill_diagonal(raw, 0.0)
    raw[raw < sparsify] = 0.0
    return weight_matrix_validate(raw)


def complete_unit(p) -> WeightMatrix:
    raw = np.ones((p, p)) - np.eye(p)
    return weight_matrix_validate(raw)


def chain(p, weight=1.0) -> WeightMatrix:
    raw = np.zeros((p, p))
    for i in range(p - 1):
        raw[i, i + 1] = raw[i + 1, i] = weight
    return weight_matrix_validate(raw)
