"""Minimal NPY v1.0 array files: 2D little-endian float64, C order, nothing else.

The writer emits exactly this subset; the reader validates every header field
and rejects anything outside it with a message naming the violated constraint.
Round trips are bitwise lossless.
"""

from __future__ import annotations

import ast
from pathlib import Path

import numpy as np

_MAGIC = b"\x93NUMPY"
_VERSION = bytes([1, 0])


class ArrayFileError(ValueError):
    """Raised when a file is not a supported NPY v1.0 float64 2D array."""


def save_array(path, array) -> None:
    """Write a 2D float64 array as NPY v1.0 (little-endian, C order)."""
    arr = np.asarray(array)
    if arr.ndim != 2:
        raise ArrayFileError(f"only 2D arrays are supported, got shape {arr.shape}")
    arr = np.ascontiguousarray(arr, dtype="<f8")
    header = (
        "{'descr': '<f8', 'fortran_order': False, "
        f"'shape': ({arr.shape[0]}, {arr.shape[1]}), }}"
    )
    prefix_len = len(_MAGIC) + len(_VERSION) + 2
    total = prefix_len + len(header) + 1
    header = header + " " * (-total % 64) + "\n"
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(_VERSION)
        fh.write(len(header).to_bytes(2, "little"))
        fh.write(header.encode("latin1"))
        fh.write(arr.tobytes(order="C"))


def load_array(path) -> np.ndarray:
    """Read an NPY file, accepting only v1.0 / '<f8' / C order / 2D."""
    data = Path(path).read_bytes()
    if len(data) < 10 or data[:6] != _MAGIC:
        raise ArrayFileError(f"{path}: not an NPY file (bad magic)")
    if data[6:8] != _VERSION:
        raise ArrayFileError(
            f"{path}: unsupported NPY version {data[6]}.{data[7]}; only 1.0 is supported"
        )
    header_len = int.from_bytes(data[8:10], "little")
    header_end = 10 + header_len
    if len(data) < header_end:
        raise ArrayFileError(f"{path}: truncated header")
    try:
        header = ast.literal_eval(data[10:header_end].decode("latin1"))
    except (ValueError, SyntaxError) as exc:
        raise ArrayFileError(f"{path}: malformed header dict") from exc
    if not isinstance(header, dict) or set(header) != {"descr", "fortran_order", "shape"}:
        raise ArrayFileError(f"{path}: malformed header dict")
    if header["descr"] != "<f8":
        raise ArrayFileError(
            f"{path}: dtype {header['descr']!r} is not supported; only '<f8' "
            f"(little-endian float64)"
        )
    if header["fortran_order"] is not False:
        raise ArrayFileError(f"{path}: Fortran-order arrays are not supported")
    shape = header["shape"]
    if (
        not isinstance(shape, tuple)
        or len(shape) != 2
        or not all(isinstance(n, int) and n >= 0 for n in shape)
    ):
        raise ArrayFileError(f"{path}: shape {shape!r} is not 2D")
    expected = 8 * shape[0] * shape[1]
    payload = data[header_end:]
    if len(payload) != expected:
        raise ArrayFileError(
            f"{path}: payload is {len(payload)} bytes, expected {expected} for shape {shape}"
        )
    return np.frombuffer(payload, dtype="<f8").reshape(shape).copy()
