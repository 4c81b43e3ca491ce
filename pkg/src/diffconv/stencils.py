"""Exact derivative stencils for Lagrange interpolation on a uniform pixel grid.

Everything here is computed with `fractions.Fraction`, so the stencil tables,
the assembled stencil matrices and the center-matrix inverse are exact for any
supported kernel size. Floating point enters only through the ``to_floats``
conversions used by callers.

A derivative stencil is the K x K array of weights that, product-summed with a
K x K window of pixel values, yields a mixed derivative of the window's
interpolating polynomial at one in-window pixel. Stencil matrices collect the
K^2 vectorized stencils of one pixel as columns; the inverse of the matrix at
the window center is what turns a convolution kernel into operator
coefficients.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

SUPPORTED_SIZES = (3, 5, 7, 9)

FractionMatrix = tuple[tuple[Fraction, ...], ...]

# Reentrant so cached builders may call each other while holding it; cache
# fills happen entirely under the lock, giving at-most-once computation on
# concurrent first access.
_CACHE_LOCK = threading.RLock()
_TABLES: dict[int, tuple[tuple[tuple[Fraction, ...], ...], ...]] = {}
_CENTER_INVERSES: dict[int, FractionMatrix] = {}


def half_width(k: int) -> int:
    """Validate kernel size ``k`` and return the window half-width (k - 1) // 2."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ValueError(f"kernel size must be an integer, got {k!r}")
    if k not in SUPPORTED_SIZES:
        raise ValueError(f"kernel size must be one of {SUPPORTED_SIZES}, got {k}")
    return (int(k) - 1) // 2


def _basis_numerator(k: int, node: int) -> list[int]:
    # Integer coefficients (ascending powers) of prod_{j != node} (x - j).
    coeffs = [1]
    for j in range(k):
        if j == node:
            continue
        shifted = [0] + coeffs
        scaled = [-j * a for a in coeffs] + [0]
        coeffs = [s + t for s, t in zip(shifted, scaled)]
    return coeffs


def _poly_derivative(coeffs: list[int]) -> list[int]:
    return [e * a for e, a in enumerate(coeffs)][1:]


def _horner(coeffs: list[int], x: int) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def _derivative_table(k: int):
    """table[order][node][at] = value of the order-th derivative of basis
    polynomial ``node`` evaluated at grid point ``at``, exact."""
    with _CACHE_LOCK:
        cached = _TABLES.get(k)
        if cached is not None:
            return cached
        table = []
        per_node = []
        for node in range(k):
            den = 1
            for j in range(k):
                if j != node:
                    den *= node - j
            per_node.append((den, _basis_numerator(k, node)))
        for order in range(k):
            rows = []
            for node in range(k):
                den, coeffs = per_node[node]
                rows.append(tuple(Fraction(_horner(coeffs, at), den) for at in range(k)))
                per_node[node] = (den, _poly_derivative(coeffs))
            table.append(tuple(rows))
        result = tuple(table)
        _TABLES[k] = result
        return result


def _check_index(name: str, value: int, k: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if not 0 <= value <= k - 1:
        raise ValueError(f"{name} must be in 0..{k - 1}, got {value}")
    return int(value)


def lagrange_derivative(k: int, node: int, order: int, at: int) -> Fraction:
    """Exact value of the ``order``-th derivative of the ``node``-th Lagrange
    basis polynomial (unit-spaced nodes 0..k-1) evaluated at grid point ``at``.

    Computed by expanding the basis numerator to integer coefficients and
    differentiating formally, so the result is an exact rational.
    """
    half_width(k)
    node = _check_index("node", node, k)
    order = _check_index("order", order, k)
    at = _check_index("at", at, k)
    return _derivative_table(k)[order][node][at]


@dataclass(frozen=True)
class DerivativeStencil:
    """K x K weights extracting one mixed interpolant derivative at pixel (y, x).

    ``entries[i][j]`` is the weight of window pixel (i, j); derivative order is
    ``order_y`` along rows and ``order_x`` along columns.
    """

    size: int
    order_y: int
    order_x: int
    y: int
    x: int
    entries: FractionMatrix

    def to_floats(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=np.float64)


def derivative_stencil(k: int, order_y: int, order_x: int, y: int, x: int) -> DerivativeStencil:
    """Build the exact stencil for derivative order (order_y, order_x) at (y, x)."""
    half_width(k)
    order_y = _check_index("order_y", order_y, k)
    order_x = _check_index("order_x", order_x, k)
    y = _check_index("y", y, k)
    x = _check_index("x", x, k)
    table = _derivative_table(k)
    row_vals = table[order_y]
    col_vals = table[order_x]
    entries = tuple(
        tuple(row_vals[i][y] * col_vals[j][x] for j in range(k)) for i in range(k)
    )
    return DerivativeStencil(k, order_y, order_x, y, x, entries)


@dataclass(frozen=True)
class StencilMatrix:
    """K^2 x K^2 matrix whose column order_y*K+order_x is the row-major
    vectorization of the corresponding derivative stencil at pixel (y, x)."""

    size: int
    y: int
    x: int
    entries: FractionMatrix

    def to_floats(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=np.float64)


def stencil_matrix(k: int, y: int, x: int) -> StencilMatrix:
    """Assemble all K^2 derivative stencils at (y, x) into one matrix.

    Row index is i*K+j (window pixel), column index is order_y*K+order_x.
    """
    half_width(k)
    y = _check_index("y", y, k)
    x = _check_index("x", x, k)
    table = _derivative_table(k)
    at_y = [[table[order][node][y] for node in range(k)] for order in range(k)]
    at_x = [[table[order][node][x] for node in range(k)] for order in range(k)]
    rows = []
    for i in range(k):
        for j in range(k):
            rows.append(
                tuple(at_y[oy][i] * at_x[ox][j] for oy in range(k) for ox in range(k))
            )
    return StencilMatrix(k, y, x, tuple(rows))


def mat_identity(n: int) -> FractionMatrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: FractionMatrix, b: FractionMatrix) -> FractionMatrix:
    """Exact matrix product. Scales both factors to integer matrices first so
    the inner loops run on machine/big integers instead of Fractions."""
    da = lcm(*[v.denominator for row in a for v in row])
    db = lcm(*[v.denominator for row in b for v in row])
    ai = [[int(v * da) for v in row] for row in a]
    bi = [[int(v * db) for v in row] for row in b]
    bt = list(zip(*bi))
    d = da * db
    return tuple(
        tuple(Fraction(sum(x * y for x, y in zip(row, col)), d) for col in bt) for row in ai
    )


def mat_to_floats(entries: FractionMatrix) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in entries], dtype=np.float64)


def _gauss_jordan_inverse(matrix: FractionMatrix) -> FractionMatrix:
    n = len(matrix)
    work = [list(row) for row in matrix]
    inv = [list(row) for row in mat_identity(n)]
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(work[r][col]))
        if work[pivot_row][col] == 0:
            raise ArithmeticError("stencil matrix is singular; exact inversion failed")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        inv[col] = [v / pivot for v in inv[col]]
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor:
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
                inv[r] = [v - factor * w for v, w in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def invert_center_matrix(k: int) -> FractionMatrix:
    """Exact inverse of the stencil matrix at the window center.

    Fraction-preserving Gauss-Jordan elimination with magnitude pivoting; the
    matrix is provably invertible for every supported size, so a singular
    pivot is an internal error rather than a user-facing condition.
    """
    m = half_width(k)
    with _CACHE_LOCK:
        cached = _CENTER_INVERSES.get(k)
        if cached is None:
            cached = _gauss_jordan_inverse(stencil_matrix(k, m, m).entries)
            _CENTER_INVERSES[k] = cached
        return cached


def center_condition_number(k: int) -> float:
    """1-norm condition number of the center stencil matrix, from exact data.

    Reported for diagnostics: it grows rapidly with kernel size, which bounds
    how much float accuracy survives the kernel transforms.
    """
    m = half_width(k)
    center = stencil_matrix(k, m, m).entries
    inverse = invert_center_matrix(k)

    def norm1(mat: FractionMatrix) -> Fraction:
        return max(sum(abs(v) for v in col) for col in zip(*mat))

    return float(norm1(center) * norm1(inverse))


def warm_cache(sizes=(3, 5, 7)) -> None:
    """Precompute derivative tables and center inverses for the given sizes."""
    for k in sizes:
        _derivative_table(k)
        invert_center_matrix(k)


def fraction_to_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def fraction_from_string(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den)) if den else Fraction(int(num))


def matrix_payload(entries: FractionMatrix, exact: bool):
    """Nested-list JSON payload: exact "num/den" strings or lossy doubles."""
    if exact:
        return [[fraction_to_string(v) for v in row] for row in entries]
    return [[float(v) for v in row] for row in entries]
