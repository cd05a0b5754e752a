"""Patch-wise image smoothing driven by a noise-intensity map.

The image is swept by a small sliding window. Each window becomes one solve:
the pixels flatten row-major into y, the matching window of the intensity map
turns into edge weights on the 4-neighborhood grid (each edge weighted by the
mean intensity of its two endpoints), and the fitted coefficients are averaged
back into the output wherever windows overlap. Noisier regions thus get
proportionally stronger smoothing while quiet regions are left mostly alone.

Also here: a synthetic radially-growing noise model for experiments, a median
filter baseline, and PSNR.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import ndimage

from .errors import (
    DimensionMismatchError,
    EvenWindowError,
    PatchLargerThanImageError,
    WindowLargerThanImageError,
)
from .graph import WeightMatrix, weight_matrix_validate
from .solver import SolverConfig, solve


@dataclass(frozen=True)
class GrayImage:
    """A height x width grayscale image with intensities in [0, 1]."""

    height: int
    width: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise ValueError("image dimensions must be positive")
        if self.pixels.shape != (self.height, self.width):
            raise ValueError(
                f"pixel array shape {self.pixels.shape} does not match "
                f"({self.height}, {self.width})"
            )
        if self.pixels.size and (self.pixels.min() < 0.0 or self.pixels.max() > 1.0):
            raise ValueError("pixel values must lie in [0, 1]")
        self.pixels.setflags(write=False)


def gray_image(pixels) -> GrayImage:
    """Wrap a 2-d array as a GrayImage, validating range and shape."""
    arr = np.ascontiguousarray(pixels, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d pixel array, got ndim={arr.ndim}")
    return GrayImage(height=arr.shape[0], width=arr.shape[1], pixels=arr)


@dataclass(frozen=True)
class PatchSpec:
    """Sliding-window geometry: window size and step between positions."""

    patch_h: int = 5
    patch_w: int = 4
    stride: int = 1

    def __post_init__(self):
        if self.patch_h < 1 or self.patch_w < 1:
            raise ValueError("patch dimensions must be positive")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        if self.stride > min(self.patch_h, self.patch_w):
            # A step wider than the window skips interior pixels entirely;
            # no flush position can cover them, so the averaging buffers
            # would divide by zero there.
            raise ValueError(
                "stride %d exceeds the patch size %dx%d; some pixels would "
                "never be covered" % (self.stride, self.patch_h, self.patch_w)
            )


def radial_noise(img: GrayImage, max_sigma: float, seed: int):
    """Add zero-mean gaussian noise whose scale grows from 0 at the image
    center to max_sigma at the corners.

    Returns (noisy, intensity). The intensity map is the normalized distance
    from the center, so it doubles as the weight source for denoising the
    same image. The noise field is drawn once from a seeded generator
    (NumPy's default PCG64) and scaled, so a given seed always produces the
    same noisy image.
    """
    if max_sigma < 0:
        raise ValueError("max_sigma must be >= 0")
    h, w = img.height, img.width
    cr, cc = (h - 1) / 2.0, (w - 1) / 2.0
    rr, cc_grid = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    dist = np.sqrt((rr - cr) ** 2 + (cc_grid - cc) ** 2)
    max_dist = math.sqrt(cr ** 2 + cc ** 2)
    intensity = dist / max_dist if max_dist > 0 else np.zeros_like(dist)

    rng = np.random.default_rng(seed)
    field_ = rng.standard_normal((h, w))
    noisy = np.clip(img.pixels + max_sigma * intensity * field_, 0.0, 1.0)
    return gray_image(noisy), gray_image(intensity)


def grid_weights(intensity_patch: GrayImage) -> WeightMatrix:
    """Edge weights for one window: a 4-neighborhood grid over the pixels in
    row-major order, each edge weighted by the mean intensity of its two
    endpoints. Non-adjacent pixel pairs get weight zero."""
    h, w = intensity_patch.height, intensity_patch.width
    vals = intensity_patch.pixels
    p = h * w
    mat = np.zeros((p, p), dtype=np.float64)
    for r in range(h):
        for c in range(w):
            a = r * w + c
            if c + 1 < w:
                b = a + 1
                mat[a, b] = mat[b, a] = (vals[r, c] + vals[r, c + 1]) / 2.0
            if r + 1 < h:
                b = a + w
                mat[a, b] = mat[b, a] = (vals[r, c] + vals[r + 1, c]) / 2.0
    return weight_matrix_validate(mat)


def _positions(extent: int, patch: int, stride: int):
    """Window origins along one axis: multiples of stride, then one final
    position flush with the far edge so every pixel is covered."""
    last = extent - patch
    pos = list(range(0, last + 1, stride))
    if pos[-1] != last:
        pos.append(last)
    return pos


def denoise(
    noisy: GrayImage,
    intensity: GrayImage,
    spec: PatchSpec,
    lambda1: float,
    lambda2: float,
    cfg: SolverConfig = SolverConfig(),
) -> GrayImage:
    """Smooth the image window by window, averaging overlaps.

    Every window position contributes a full solve; output pixels are the
    mean of all window results covering them, clipped back to [0, 1]. The
    result does not depend on the order positions are visited.
    """
    if (noisy.height, noisy.width) != (intensity.height, intensity.width):
        raise DimensionMismatchError(
            f"noisy image is {noisy.height}x{noisy.width} but intensity map "
            f"is {intensity.height}x{intensity.width}"
        )
    h, w = noisy.height, noisy.width
    ph, pw = spec.patch_h, spec.patch_w
    if ph > h or pw > w:
        raise PatchLargerThanImageError(
            f"patch {ph}x{pw} does not fit in image {h}x{w}"
        )

    cfg = replace(cfg, lambda1=float(lambda1), lambda2=float(lambda2))
    acc = np.zeros((h, w), dtype=np.float64)
    cnt = np.zeros((h, w), dtype=np.float64)
    for r in _positions(h, ph, spec.stride):
        for c in _positions(w, pw, spec.stride):
            y = noisy.pixels[r:r + ph, c:c + pw].ravel()
            wm = grid_weights(gray_image(intensity.pixels[r:r + ph, c:c + pw]))
            sol = solve(y, wm, cfg)
            acc[r:r + ph, c:c + pw] += sol.beta.reshape(ph, pw)
            cnt[r:r + ph, c:c + pw] += 1.0
    return gray_image(np.clip(acc / cnt, 0.0, 1.0))


def median_filter(img: GrayImage, win_h: int, win_w: int) -> GrayImage:
    """Windowed median with replicate borders; window sides must be odd."""
    if win_h < 1 or win_w < 1 or win_h % 2 == 0 or win_w % 2 == 0:
        raise EvenWindowError(f"window sides must be odd and positive, got {win_h}x{win_w}")
    if win_h > img.height or win_w > img.width:
        raise WindowLargerThanImageError(
            f"window {win_h}x{win_w} exceeds image {img.height}x{img.width}"
        )
    out = ndimage.median_filter(img.pixels, size=(win_h, win_w), mode="nearest")
    return gray_image(out)


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB for unit-range images; +inf when the
    images are identical."""
    if (a.height, a.width) != (b.height, b.width):
        raise DimensionMismatchError(
            f"cannot compare {a.height}x{a.width} against {b.height}x{b.width}"
        )
    mse = float(np.mean((a.pixels - b.pixels) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)
