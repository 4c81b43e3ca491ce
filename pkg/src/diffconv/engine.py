"""Size-keeping 2D convolution without padding.

Interior pixels get the ordinary valid convolution. Every near-boundary pixel
is served by its nearest complete window: the kernel is swapped for the bank
entry matching the pixel's position inside that window, so no value outside
the image is ever read or invented.

All products use cross-correlation orientation (no kernel flip), and every
output pixel is accumulated in the same fixed kernel-index order, so results
are bitwise reproducible and the interior agrees bitwise with
:func:`conv2d_valid`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stencils import half_width
from .transform import KernelBank, as_kernel, build_bank


def as_field(field) -> np.ndarray:
    """Validate and return a field as a 2D float64 array with finite entries."""
    arr = np.asarray(field, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"field must be a 2D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("field entries must be finite")
    return arr


def _check_sizes(field: np.ndarray, k: int) -> None:
    h, w = field.shape
    if h < k or w < k:
        raise ValueError(
            f"field of shape {h}x{w} is smaller than the {k}x{k} kernel; "
            f"need at least one complete window"
        )


def _accumulate(field: np.ndarray, kernel: np.ndarray, y0: int, x0: int,
                ny: int, nx: int) -> np.ndarray:
    # Product-sum over windows whose top-left corners span
    # (y0..y0+ny-1) x (x0..x0+nx-1), accumulated in fixed (i, j) order so the
    # per-pixel arithmetic path is identical wherever the same window appears.
    k = kernel.shape[0]
    out = np.zeros((ny, nx), dtype=np.float64)
    for i in range(k):
        for j in range(k):
            out += kernel[i, j] * field[y0 + i:y0 + i + ny, x0 + j:x0 + j + nx]
    return out


def conv2d_valid(field, kernel) -> np.ndarray:
    """Valid cross-correlation: output shape (H-K+1, W-K+1)."""
    arr = as_field(field)
    ker = as_kernel(kernel)
    k = ker.shape[0]
    _check_sizes(arr, k)
    h, w = arr.shape
    return _accumulate(arr, ker, 0, 0, h - k + 1, w - k + 1)


@dataclass(frozen=True)
class WindowAssignment:
    """Nearest-complete-window bookkeeping for one pixel.

    ``center_y/center_x`` locate the window center (the pixel's coordinates
    clamped to the valid region); ``local_y/local_x`` are the pixel's
    coordinates inside that window, equal to the half-width for interior
    pixels.
    """

    center_y: int
    center_x: int
    local_y: int
    local_x: int


def window_assignment(height: int, width: int, k: int, y: int, x: int) -> WindowAssignment:
    m = half_width(k)
    if height < k or width < k:
        raise ValueError(f"field of shape {height}x{width} has no complete {k}x{k} window")
    if not (0 <= y < height and 0 <= x < width):
        raise ValueError(f"pixel ({y}, {x}) is outside a {height}x{width} field")
    cy = min(max(y, m), height - 1 - m)
    cx = min(max(x, m), width - 1 - m)
    return WindowAssignment(cy, cx, y - cy + m, x - cx + m)


def _axis_classes(n: int, k: int):
    # For each in-window coordinate r: (output slice, window top coordinate,
    # run length). r < m are the leading edge rows, r > m the trailing ones,
    # r == m the interior run.
    m = half_width(k)
    classes = []
    for r in range(k):
        if r < m:
            classes.append((slice(r, r + 1), 0, 1))
        elif r > m:
            classes.append((slice(n - k + r, n - k + r + 1), n - k, 1))
        else:
            classes.append((slice(m, n - m), 0, n - k + 1))
    return classes


def conv2d_diff(field, kernel, bank: KernelBank | None = None) -> np.ndarray:
    """Size-keeping convolution via transformed boundary kernels.

    Interior output equals :func:`conv2d_valid` bitwise. Each boundary pixel
    is the product-sum of the bank kernel for its in-window position with its
    nearest complete window. Pass a prebuilt ``bank`` to amortize the (cheap)
    transform when filtering many fields with one kernel.
    """
    arr = as_field(field)
    ker = as_kernel(kernel)
    k = ker.shape[0]
    m = half_width(k)
    _check_sizes(arr, k)
    if bank is None:
        bank = build_bank(ker)
    elif bank.size != k:
        raise ValueError(f"bank is for size {bank.size}, kernel has size {k}")
    h, w = arr.shape
    out = np.empty((h, w), dtype=np.float64)
    out[m:h - m, m:w - m] = conv2d_valid(arr, ker)
    row_classes = _axis_classes(h, k)
    col_classes = _axis_classes(w, k)
    for r in range(k):
        rows, y0, ny = row_classes[r]
        for s in range(k):
            if r == m and s == m:
                continue
            cols, x0, nx = col_classes[s]
            out[rows, cols] = _accumulate(arr, bank.kernels[r * k + s], y0, x0, ny, nx)
    return out
