"""Text formats for problem data: signal CSVs, dense weight CSVs, and
edge-list TSVs.

Vertex indices are 1-based in files and error messages and converted at this
boundary. All parse failures raise ParseError carrying the path and line, so
the CLI can report exactly where an input went wrong. Writers serialize
floats with repr(), which round-trips every double exactly.
"""
import numpy as np

from .errors import ParseError, WflsaError
from .graph import WeightMatrix, weight_matrix_validate


def _data_lines(path):
    """Yield (line_number, stripped_text) skipping blanks and '#' comments."""
    with open(str(path), "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                yield lineno, body


def read_vector_csv(path) -> np.ndarray:
    """Read a signal: one real number per line."""
    path = str(path)
    vals = []
    for lineno, body in _data_lines(path):
        try:
            vals.append(float(body))
        except ValueError:
            raise ParseError(path, lineno, f"expected one real number, got {body!r}") from None
    if not vals:
        raise ParseError(path, 0, "no data lines found")
    return np.array(vals, dtype=np.float64)


def write_vector_csv(path, vec):
    with open(str(path), "w", encoding="ascii") as fh:
        for v in np.asarray(vec, dtype=np.float64):
            fh.write(repr(float(v)) + "\n")


def read_weights_csv(path) -> WeightMatrix:
    """Read a dense weight matrix: p rows of p comma-separated reals."""
    path = str(path)
    rows = []
    first_len = None
    for lineno, body in _data_lines(path):
        cells = body.split(",")
        if first_len is None:
            first_len = len(cells)
        elif len(cells) != first_len:
            raise ParseError(
                path, lineno,
                f"row has {len(cells)} columns, expected {first_len}",
            )
        row = []
        for cell in cells:
            try:
                row.append(float(cell))
            except ValueError:
                raise ParseError(path, lineno, f"expected a real number, got {cell.strip()!r}") from None
        rows.append(row)
    if not rows:
        raise ParseError(path, 0, "no data lines found")
    if len(rows) != first_len:
        raise ParseError(path, 0, f"matrix is {len(rows)} rows by {first_len} columns, must be square")
    try:
        return weight_matrix_validate(np.array(rows, dtype=np.float64))
    except WflsaError as exc:
        raise ParseError(path, 0, str(exc)) from None


def read_weights_tsv(path, p=None) -> WeightMatrix:
    """Read an edge list: lines "i<TAB>j<TAB>w" with 1-based i < j and w > 0.

    Unlisted pairs get weight zero. When ``p`` is omitted the vertex count is
    the largest index mentioned.
    """
    path = str(path)
    edges = {}
    max_idx = 0
    for lineno, body in _data_lines(path):
        parts = body.split("\t")
        if len(parts) != 3:
            raise ParseError(path, lineno, f"expected 'i<TAB>j<TAB>w', got {body!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(path, lineno, f"vertex indices must be integers, got {parts[0]!r}, {parts[1]!r}") from None
        try:
            wv = float(parts[2])
        except ValueError:
            raise ParseError(path, lineno, f"weight must be a real number, got {parts[2]!r}") from None
        if i < 1 or j < 1:
            raise ParseError(path, lineno, f"vertex indices are 1-based, got ({i}, {j})")
        if i >= j:
            raise ParseError(path, lineno, f"edges require i < j, got ({i}, {j})")
        if wv <= 0:
            raise ParseError(path, lineno, f"edge weights must be > 0, got {wv}")
        if (i, j) in edges:
            raise ParseError(path, lineno, f"duplicate edge ({i}, {j})")
        edges[(i, j)] = wv
        max_idx = max(max_idx, j)
    if not edges:
        raise ParseError(path, 0, "no edges found")
    size = p if p is not None else max_idx
    if max_idx > size:
        raise ParseError(path, 0, f"edge references vertex {max_idx} but p={size}")
    mat = np.zeros((size, size), dtype=np.float64)
    for (i, j), wv in edges.items():
        mat[i - 1, j - 1] = mat[j - 1, i - 1] = wv
    return weight_matrix_validate(mat)


def read_weights_auto(path, p=None) -> WeightMatrix:
    """Dispatch on extension: .tsv is an edge list, anything else dense CSV."""
    if str(path).lower().endswith(".tsv"):
        return read_weights_tsv(path, p=p)
    return read_weights_csv(path)
