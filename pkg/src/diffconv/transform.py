"""Kernel transforms for boundary positions.

A convolution kernel is equivalent to a linear differential operator acting on
the window interpolant at the window center. Solving the center stencil system
gives the operator's coefficient vector; re-evaluating that operator at any
other in-window position yields a transformed kernel that acts on the nearest
complete window instead. The per-position transform matrices are materialized
exactly in rational arithmetic once per kernel size and converted to float64
for the runtime path.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

import numpy as np

from .stencils import (
    FractionMatrix,
    half_width,
    invert_center_matrix,
    mat_mul,
    mat_to_floats,
    stencil_matrix,
)

# Cache fills run under the lock (at-most-once on concurrent first access);
# the lock may be held while calling into the stencils module, never the
# other way around.
_LOCK = threading.RLock()
_EXACT_BANKS: dict[int, tuple[FractionMatrix, ...]] = {}
_FLOAT_BANKS: dict[int, np.ndarray] = {}
_FLOAT_CENTER: dict[int, np.ndarray] = {}
_FLOAT_CENTER_INV: dict[int, np.ndarray] = {}


def as_kernel(kernel) -> np.ndarray:
    """Validate and return a kernel as a float64 K x K array (K odd, supported)."""
    arr = np.asarray(kernel, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"kernel must be a square 2D array, got shape {arr.shape}")
    half_width(arr.shape[0])
    if not np.all(np.isfinite(arr)):
        raise ValueError("kernel entries must be finite")
    return arr


def identity_kernel(k: int) -> np.ndarray:
    m = half_width(k)
    kernel = np.zeros((k, k), dtype=np.float64)
    kernel[m, m] = 1.0
    return kernel


def exact_transforms(k: int) -> tuple[FractionMatrix, ...]:
    """All K^2 exact transform matrices, indexed by target position r*K+s.

    Entry r*K+s maps a vectorized kernel to the kernel that reproduces its
    action at in-window position (r, s) when applied over the full window.
    The entry for the center position is exactly the identity.
    """
    half_width(k)
    with _LOCK:
        cached = _EXACT_BANKS.get(k)
        if cached is None:
            inverse = invert_center_matrix(k)
            cached = tuple(
                mat_mul(stencil_matrix(k, r, s).entries, inverse)
                for r in range(k)
                for s in range(k)
            )
            _EXACT_BANKS[k] = cached
        return cached


def exact_transform(k: int, r: int, s: int) -> FractionMatrix:
    half_width(k)
    if not (0 <= r < k and 0 <= s < k):
        raise ValueError(f"position must be in 0..{k - 1} per axis, got ({r}, {s})")
    return exact_transforms(k)[r * k + s]


def float_transforms(k: int) -> np.ndarray:
    """Float64 copy of the exact transform bank, shape (K^2, K^2, K^2)."""
    half_width(k)
    with _LOCK:
        cached = _FLOAT_BANKS.get(k)
        if cached is None:
            cached = np.stack([mat_to_floats(t) for t in exact_transforms(k)])
            cached.setflags(write=False)
            _FLOAT_BANKS[k] = cached
        return cached


def _float_center(k: int) -> np.ndarray:
    m = half_width(k)
    with _LOCK:
        cached = _FLOAT_CENTER.get(k)
        if cached is None:
            cached = stencil_matrix(k, m, m).to_floats()
            cached.setflags(write=False)
            _FLOAT_CENTER[k] = cached
        return cached


def _float_center_inverse(k: int) -> np.ndarray:
    half_width(k)
    with _LOCK:
        cached = _FLOAT_CENTER_INV.get(k)
        if cached is None:
            cached = mat_to_floats(invert_center_matrix(k))
            cached.setflags(write=False)
            _FLOAT_CENTER_INV[k] = cached
        return cached


def operator_coeffs(kernel) -> np.ndarray:
    """Coefficients of the differential operator equivalent to ``kernel``.

    Index order_y*K+order_x weights the (order_y, order_x) mixed derivative.
    The linear system is solved with the exact center inverse, evaluated in
    float64.
    """
    arr = as_kernel(kernel)
    k = arr.shape[0]
    return _float_center_inverse(k) @ arr.reshape(k * k)


def kernel_from_operator(coeffs) -> np.ndarray:
    """Kernel whose window action equals the given operator coefficients."""
    alpha = np.asarray(coeffs, dtype=np.float64)
    if alpha.ndim != 1:
        raise ValueError(f"coefficients must be a 1D vector, got shape {alpha.shape}")
    k = int(round(np.sqrt(alpha.size)))
    if k * k != alpha.size:
        raise ValueError(f"coefficient vector length {alpha.size} is not a square")
    half_width(k)
    if not np.all(np.isfinite(alpha)):
        raise ValueError("coefficients must be finite")
    return (_float_center(k) @ alpha).reshape(k, k)


def transform_kernel(kernel, r: int, s: int) -> np.ndarray:
    """Kernel to apply over the nearest complete window so that its action
    matches ``kernel`` at in-window position (r, s). The center position
    returns the kernel unchanged."""
    arr = as_kernel(kernel)
    k = arr.shape[0]
    if not (0 <= r < k and 0 <= s < k):
        raise ValueError(f"position must be in 0..{k - 1} per axis, got ({r}, {s})")
    m = half_width(k)
    if (r, s) == (m, m):
        return arr.copy()
    t = float_transforms(k)[r * k + s]
    return (t @ arr.reshape(k * k)).reshape(k, k)


@dataclass(frozen=True)
class KernelBank:
    """All K^2 transformed variants of one kernel, indexed by (r, s).

    ``kernels[r*size+s]`` is the kernel to apply over a complete window when
    the target pixel sits at in-window position (r, s); the center entry is
    the original kernel.
    """

    size: int
    base: np.ndarray
    kernels: np.ndarray

    def kernel_at(self, r: int, s: int) -> np.ndarray:
        if not (0 <= r < self.size and 0 <= s < self.size):
            raise ValueError(
                f"position must be in 0..{self.size - 1} per axis, got ({r}, {s})"
            )
        return self.kernels[r * self.size + s]

    def to_json(self) -> str:
        payload = {
            "size": self.size,
            "base": self.base.tolist(),
            "kernels": {
                f"{r},{s}": self.kernels[r * self.size + s].tolist()
                for r in range(self.size)
                for s in range(self.size)
            },
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "KernelBank":
        payload = json.loads(text)
        k = payload["size"]
        half_width(k)
        base = np.asarray(payload["base"], dtype=np.float64)
        kernels = np.empty((k * k, k, k), dtype=np.float64)
        for r in range(k):
            for s in range(k):
                entry = payload["kernels"].get(f"{r},{s}")
                if entry is None:
                    raise ValueError(f"bank JSON is missing position {r},{s}")
                kernels[r * k + s] = np.asarray(entry, dtype=np.float64)
        bank = cls(size=k, base=base, kernels=kernels)
        bank.base.setflags(write=False)
        bank.kernels.setflags(write=False)
        return bank


def build_bank(kernel) -> KernelBank:
    """Build the full transformed-kernel bank for one kernel.

    The center entry is the original kernel verbatim; all other entries come
    from a single batched matrix-vector product against the float transform
    bank.
    """
    arr = as_kernel(kernel)
    k = arr.shape[0]
    m = half_width(k)
    kernels = (float_transforms(k) @ arr.reshape(k * k)).reshape(k * k, k, k)
    kernels[m * k + m] = arr
    kernels.setflags(write=False)
    base = arr.copy()
    base.setflags(write=False)
    return KernelBank(size=k, base=base, kernels=kernels)
