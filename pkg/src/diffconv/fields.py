"""Synthetic analytic fields, random test kernels, and the extended-sampling
ground truth for boundary-handling comparisons.

Fields are sampled with an optional analytic margin: the same coordinate map
is evaluated beyond the image edges, so a valid convolution over the extended
grid gives the result an ideal boundary method would produce. Generation is
elementwise throughout, which makes the central block of a margined field
bitwise identical to a margin-free generation of the same spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import as_field, conv2d_valid
from .stencils import half_width
from .transform import as_kernel

FAMILIES = ("chebyshev", "spherical", "polynomial")


def chebyshev_U(n: int, x):
    """Chebyshev polynomial of the second kind, by the three-term recurrence
    U_0 = 1, U_1 = 2x, U_{k+1} = 2x U_k - U_{k-1}. Accepts scalars or arrays."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    x = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur if cur.ndim else float(cur)


def _legendre_assoc(l: int, m: int, x):
    # Associated Legendre P_l^m without the Condon-Shortley factor, via the
    # standard upward recurrence in degree (stable for the moderate l used
    # here).
    x = np.asarray(x, dtype=np.float64)
    pmm = np.ones_like(x)
    if m > 0:
        somx2 = np.sqrt(np.maximum(0.0, (1.0 - x) * (1.0 + x)))
        fact = 1.0
        for _ in range(m):
            pmm = pmm * fact * somx2
            fact += 2.0
    if l == m:
        return pmm
    pmmp1 = x * (2.0 * m + 1.0) * pmm
    if l == m + 1:
        return pmmp1
    for ll in range(m + 2, l + 1):
        pmm, pmmp1 = pmmp1, (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m)
    return pmmp1


def spherical_Y(l: int, m: int, theta, phi):
    """Real orthonormal spherical harmonic of degree ``l`` and order ``m``.

    Cosine convention: sqrt(2) * N_lm * P_l^m(cos theta) * cos(m phi) for
    m > 0 and N_l0 * P_l(cos theta) for m = 0, with orthonormalizing N_lm.
    """
    if l < 0 or m < 0:
        raise ValueError(f"degree and order must be >= 0, got l={l}, m={m}")
    if m > l:
        raise ValueError(f"order {m} exceeds degree {l}")
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * math.factorial(l - m) / math.factorial(l + m))
    p = _legendre_assoc(l, m, np.cos(theta))
    if m == 0:
        out = norm * p
    else:
        out = math.sqrt(2.0) * norm * p * np.cos(m * phi)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Field:
    """A sampled field plus an analytic margin of ``margin`` cells per side.

    ``data`` has shape (H+2m) x (W+2m); the outer band is ground truth for
    oracle use only and never feeds the methods under test.
    """

    data: np.ndarray
    margin: int

    @property
    def height(self) -> int:
        return self.data.shape[0] - 2 * self.margin

    @property
    def width(self) -> int:
        return self.data.shape[1] - 2 * self.margin

    @property
    def core(self) -> np.ndarray:
        m = self.margin
        if m == 0:
            return self.data
        return self.data[m:-m, m:-m]


@dataclass(frozen=True)
class FieldSpec:
    family: str
    height: int
    width: int
    order: int = 0
    coeffs: np.ndarray | None = None
    margin: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.height < 3 or self.width < 3:
            raise ValueError(f"field must be at least 3x3, got {self.height}x{self.width}")
        if self.margin < 0:
            raise ValueError(f"margin must be >= 0, got {self.margin}")
        if self.family == "polynomial":
            if self.coeffs is None:
                raise ValueError("polynomial family requires a coefficient table")
            arr = np.asarray(self.coeffs, dtype=np.float64)
            if arr.ndim != 2:
                raise ValueError("polynomial coefficients must be a 2D table")
            object.__setattr__(self, "coeffs", arr)
        elif self.order < 1:
            raise ValueError(
                f"{self.family} order must be >= 1 (order 0 is identically zero), got {self.order}"
            )


def _axis_indices(n: int, margin: int) -> np.ndarray:
    return np.arange(-margin, n + margin, dtype=np.float64)


def generate(spec: FieldSpec) -> Field:
    """Sample the spec's analytic function on an (H+2m) x (W+2m) grid.

    The central H x W block covers the family domain (chebyshev: [-1,1]^2;
    spherical: colatitude [0, pi] by azimuth [0, 2pi); polynomial: integer
    pixel coordinates); the margin continues the same coordinate map beyond
    the edges.
    """
    h_count, w_count, m = spec.height, spec.width, spec.margin
    ys = _axis_indices(h_count, m)
    xs = _axis_indices(w_count, m)
    if spec.family == "chebyshev":
        n = spec.order
        hv = -1.0 + 2.0 * ys / (h_count - 1)
        wv = -1.0 + 2.0 * xs / (w_count - 1)
        data = (
            chebyshev_U(n, hv)[:, None]
            * chebyshev_U(n, wv)[None, :]
            * np.sin(n * (hv[:, None] + wv[None, :]))
        )
    elif spec.family == "spherical":
        n = spec.order
        theta = math.pi * ys / (h_count - 1)
        phi = 2.0 * math.pi * xs / w_count
        # Y_{2n}^n is separable in (theta, phi); the azimuthal factor of the
        # cosine convention is cos(n*phi), recovered by evaluating at phi=0.
        y_part = spherical_Y(2 * n, n, theta, 0.0)
        data = (
            y_part[:, None]
            * np.cos(n * phi)[None, :]
            * np.sin(n * (theta[:, None] + phi[None, :]))
        )
    else:
        coeffs = spec.coeffs
        data = np.zeros((ys.size, xs.size), dtype=np.float64)
        for a in range(coeffs.shape[0]):
            w_poly = np.zeros_like(xs)
            for b in range(coeffs.shape[1]):
                w_poly += coeffs[a, b] * xs**b
            data += ys[:, None] ** a * w_poly[None, :]
    return Field(data=np.ascontiguousarray(data, dtype=np.float64), margin=m)


@dataclass(frozen=True)
class RandomKernelSpec:
    size: int
    count: int
    seed: int

    def __post_init__(self):
        half_width(self.size)
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed}")


def random_kernels(spec: RandomKernelSpec) -> list[np.ndarray]:
    """Kernels with i.i.d. entries uniform on [-1, 1].

    Kernel ``j`` draws from PCG64 seeded with the pair (seed, j), so any
    subset can be generated independently and in any order.
    """
    k = spec.size
    return [
        np.random.default_rng([spec.seed, j]).uniform(-1.0, 1.0, size=(k, k))
        for j in range(spec.count)
    ]


def oracle_convolution(field: Field, kernel) -> np.ndarray:
    """Ground-truth size-keeping convolution from the analytic margin.

    Runs the valid convolution over the margin-extended samples and crops the
    result to align with the central H x W block: the output an ideal method
    would produce if the true values outside the image were available.
    """
    ker = as_kernel(kernel)
    m_half = half_width(ker.shape[0])
    if field.margin < m_half:
        raise ValueError(
            f"oracle needs margin >= {m_half} for a {ker.shape[0]}x{ker.shape[0]} kernel, "
            f"got margin {field.margin}"
        )
    full = conv2d_valid(as_field(field.data), ker)
    off = field.margin - m_half
    return full[off:off + field.height, off:off + field.width]
