"""Reading and writing 8-bit grayscale PGM images (P2 ASCII and P5 binary).

Pixels are normalized to [0, 1] on read by dividing by the file's maxval and
rescaled to 0..255 on write. Comment lines starting with '#' are honored in
headers; anything malformed raises ParseError with the offending file and, for
the ASCII form, line number.
"""
import numpy as np

from .errors import ParseError
from .imaging import GrayImage, gray_image


def _tokenize_ascii(path, text):
    """Yield (line_number, token) for whitespace-separated tokens, skipping
    '#' comments to end of line."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for tok in body.split():
            yield lineno, tok


def _int_token(path, pairs, what):
    try:
        lineno, tok = next(pairs)
    except StopIteration:
        raise ParseError(path, 0, f"unexpected end of file while reading {what}") from None
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(path, lineno, f"expected integer {what}, got {tok!r}") from None
    return lineno, val


def read_pgm(path) -> GrayImage:
    """Load a P2 or P5 PGM file as a GrayImage."""
    path = str(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] == b"P2":
        return _read_p2(path, data)
    if data[:2] == b"P5":
        return _read_p5(path, data)
    raise ParseError(path, 1, "not a PGM file (expected magic P2 or P5)")


def _read_p2(path, data):
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise ParseError(path, 1, "P2 file contains non-ASCII bytes") from None
    pairs = _tokenize_ascii(path, text)
    next(pairs)  # the magic token, already checked by the caller
    _, width = _int_token(path, pairs, "width")
    _, height = _int_token(path, pairs, "height")
    ml, maxval = _int_token(path, pairs, "maxval")
    _check_header(path, ml, width, height, maxval)
    vals = np.empty(height * width, dtype=np.float64)
    for k in range(height * width):
        lineno, v = _int_token(path, pairs, f"pixel {k + 1}")
        if not 0 <= v <= maxval:
            raise ParseError(path, lineno, f"pixel value {v} outside 0..{maxval}")
        vals[k] = v
    return gray_image(vals.reshape(height, width) / maxval)


def _read_p5(path, data):
    # Header: magic, width, height, maxval as ASCII tokens ('#' comments
    # allowed), then a single whitespace byte, then raw pixel bytes.
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ParseError(path, 0, "unexpected end of file in P5 header")
        tok = data[start:pos]
        try:
            fields.append(int(tok))
        except ValueError:
            raise ParseError(path, 0, f"expected integer in P5 header, got {tok!r}") from None
    width, height, maxval = fields
    _check_header(path, 0, width, height, maxval)
    pos += 1  # the single whitespace byte after maxval
    raster = data[pos:pos + height * width]
    if len(raster) < height * width:
        raise ParseError(
            path, 0,
            f"P5 raster truncated: expected {height * width} bytes, got {len(raster)}",
        )
    arr = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    if arr.max(initial=0.0) > maxval:
        raise ParseError(path, 0, f"pixel value exceeds declared maxval {maxval}")
    return gray_image(arr.reshape(height, width) / maxval)


def _check_header(path, lineno, width, height, maxval):
    if width < 1 or height < 1:
        raise ParseError(path, lineno, f"invalid image dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise ParseError(path, lineno, f"maxval {maxval} unsupported (need 1..255)")


def write_pgm(path, img: GrayImage):
    """Write a GrayImage as binary P5 with maxval 255."""
    raster = np.round(img.pixels * 255.0).astype(np.uint8)
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(str(path), "wb") as fh:
        fh.write(header)
        fh.write(raster.tobytes())
