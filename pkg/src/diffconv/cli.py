"""Command-line surface: generate fields, build and dump kernels, filter
arrays, and run method-comparison benchmarks.

Arrays travel as NPY v1.0 float64 files, benchmark reports as CSV. Exit codes:
0 on success, 2 on usage errors, 1 on runtime errors. Diagnostics go to
stderr; data goes to files or stdout only. ``DIFFCONV_THREADS`` overrides the
benchmark thread count.
"""

from __future__ import annotations

import json
import os
import sys

import click
import numpy as np

from .benchmark import METHODS, BenchmarkConfig, apply_method, run_benchmark, rows_to_csv
from .fields import FAMILIES, FieldSpec, generate
from .npyio import ArrayFileError, load_array, save_array
from .stencils import (
    center_condition_number,
    derivative_stencil,
    half_width,
    invert_center_matrix,
    mat_mul,
    matrix_payload,
    stencil_matrix,
)
from .transform import build_bank, kernel_from_operator


@click.group()
def main():
    """Size-keeping 2D convolution without padding, plus boundary-handling baselines."""


def _usage(message: str) -> click.UsageError:
    return click.UsageError(message)


def _parse_position(text: str, k: int) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _usage(f"position must be 'R,S', got {text!r}")
    try:
        r, s = int(parts[0]), int(parts[1])
    except ValueError:
        raise _usage(f"position must be two integers, got {text!r}")
    if not (0 <= r < k and 0 <= s < k):
        raise _usage(f"position must be in 0..{k - 1} per axis, got ({r}, {s})")
    return r, s


def _checked_size(size: int) -> tuple[int, int]:
    try:
        return size, half_width(size)
    except ValueError as exc:
        raise _usage(str(exc))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@main.command()
@click.option("--size", type=int, required=True, help="Kernel size (odd, in 3..9).")
@click.option("--pos", default=None, help="In-window position 'R,S'; default is the center.")
@click.option("--exact", is_flag=True, help="Serialize rationals as exact 'num/den' strings.")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="JSON path (default stdout).")
def kernels(size, pos, exact, output):
    """Dump derivative stencils, stencil matrices and the position transform as JSON."""
    size, m = _checked_size(size)
    r, s = (m, m) if pos is None else _parse_position(pos, size)
    position_matrix = stencil_matrix(size, r, s)
    center_inverse = invert_center_matrix(size)
    transform = mat_mul(position_matrix.entries, center_inverse)
    stencils_payload = {
        f"{oy},{ox}": matrix_payload(derivative_stencil(size, oy, ox, r, s).entries, exact)
        for oy in range(size)
        for ox in range(size)
    }
    payload = {
        "size": size,
        "position": [r, s],
        "derivative_stencils": stencils_payload,
        "stencil_matrix": matrix_payload(position_matrix.entries, exact),
        "center_inverse": matrix_payload(center_inverse, exact),
        "transform": matrix_payload(transform, exact),
        "center_condition_1norm": center_condition_number(size),
    }
    _emit(json.dumps(payload, indent=2) + "\n", output)


def _parse_indexed_values(text: str, k: int, what: str) -> dict[tuple[int, int], float]:
    table: dict[tuple[int, int], float] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition(":")
        if not sep or len(key) != 2 or not key.isdigit():
            raise _usage(
                f"{what} entries must look like 'ab:value' with single-digit indices, got {item!r}"
            )
        a, b = int(key[0]), int(key[1])
        if a >= k or b >= k:
            raise _usage(f"{what} index ({a}, {b}) out of range for size {k}")
        try:
            table[(a, b)] = float(value)
        except ValueError:
            raise _usage(f"{what} value in {item!r} is not a number")
    if not table:
        raise _usage(f"no {what} entries given")
    return table


@main.command("make-kernel")
@click.option("--size", type=int, required=True, help="Kernel size (odd, in 3..9).")
@click.option("--op", "op_text", required=True,
              help="Operator coefficients 'mn:value,...' (m, n are derivative orders).")
@click.option("--output", type=click.Path(dir_okay=False), required=True, help="Output NPY path.")
def make_kernel(size, op_text, output):
    """Build the kernel equivalent to a linear differential operator."""
    size, _ = _checked_size(size)
    entries = _parse_indexed_values(op_text, size, "operator")
    alpha = np.zeros(size * size, dtype=np.float64)
    for (oy, ox), value in entries.items():
        alpha[oy * size + ox] = value
    save_array(output, kernel_from_operator(alpha))


@main.command()
@click.option("--family", type=click.Choice(FAMILIES), required=True)
@click.option("--order", type=int, default=1, show_default=True,
              help="Function order (chebyshev/spherical).")
@click.option("--coeffs", default=None,
              help="Polynomial coefficients 'ab:value,...' (a, b are exponents of row/col coords).")
@click.option("--height", type=int, required=True)
@click.option("--width", type=int, required=True)
@click.option("--margin", type=int, default=0, show_default=True,
              help="Analytic margin cells per side; output is (H+2m) x (W+2m).")
@click.option("--output", type=click.Path(dir_okay=False), required=True, help="Output NPY path.")
def gen(family, order, coeffs, height, width, margin, output):
    """Sample an analytic field to an NPY file."""
    coeff_table = None
    if family == "polynomial":
        if coeffs is None:
            raise _usage("polynomial family requires --coeffs")
        entries = _parse_indexed_values(coeffs, 10, "coefficient")
        max_a = max(a for a, _ in entries)
        max_b = max(b for _, b in entries)
        coeff_table = np.zeros((max_a + 1, max_b + 1), dtype=np.float64)
        for (a, b), value in entries.items():
            coeff_table[a, b] = value
    try:
        spec = FieldSpec(
            family=family, height=height, width=width,
            order=order, coeffs=coeff_table, margin=margin,
        )
    except ValueError as exc:
        raise _usage(str(exc))
    save_array(output, generate(spec).data)


@main.command("filter")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--kernel", "kernel_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--method", type=click.Choice(METHODS), required=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for distribution padding.")
@click.option("--output", type=click.Path(dir_okay=False), required=True, help="Output NPY path.")
def filter_cmd(input_path, kernel_path, method, seed, output):
    """Filter an array with the selected boundary-handling method."""
    try:
        image = load_array(input_path)
        kernel = load_array(kernel_path)
    except ArrayFileError as exc:
        raise click.ClickException(str(exc))
    if kernel.shape[0] != kernel.shape[1]:
        raise _usage(f"kernel must be square, got shape {kernel.shape}")
    try:
        half_width(kernel.shape[0])
    except ValueError as exc:
        raise _usage(str(exc))
    if image.shape[0] < kernel.shape[0] or image.shape[1] < kernel.shape[1]:
        raise _usage(
            f"image of shape {image.shape} is smaller than the kernel {kernel.shape}; "
            f"the image must be at least kernel-sized in both dimensions"
        )
    if seed < 0:
        raise _usage(f"seed must be a non-negative 64-bit integer, got {seed}")
    try:
        result = apply_method(method, image, kernel, bank=None, seed=seed)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    save_array(output, result)


def _parse_orders(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        if ":" in text:
            lo_text, hi_text = text.split(":", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise _usage(f"empty order range {text!r}")
            return tuple(range(lo, hi + 1))
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _usage(f"orders must be 'A:B' or a comma list of integers, got {text!r}")


def _thread_count() -> int:
    raw = os.environ.get("DIFFCONV_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        click.echo(f"warning: ignoring non-integer DIFFCONV_THREADS={raw!r}", err=True)
        return 1
    return max(1, value)


@main.command()
@click.option("--family", type=click.Choice(("chebyshev", "spherical")), default="chebyshev",
              show_default=True)
@click.option("--orders", default="1:10", show_default=True, help="'A:B' inclusive or comma list.")
@click.option("--height", type=int, default=128, show_default=True)
@click.option("--width", type=int, default=128, show_default=True)
@click.option("--size", type=int, default=3, show_default=True, help="Kernel size.")
@click.option("--filters", "filter_count", type=int, default=100, show_default=True,
              help="Number of random kernels.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--methods", default=",".join(METHODS), show_default=True,
              help="Comma list of methods to compare.")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="CSV path (default stdout).")
def compare(family, orders, height, width, size, filter_count, seed, methods, output):
    """Benchmark boundary-handling methods against the extended-sampling ground truth."""
    try:
        config = BenchmarkConfig(
            family=family,
            orders=_parse_orders(orders),
            height=height,
            width=width,
            size=size,
            filter_count=filter_count,
            seed=seed,
            methods=tuple(m.strip() for m in methods.split(",") if m.strip()),
        )
    except ValueError as exc:
        raise _usage(str(exc))
    rows = run_benchmark(config, threads=_thread_count())
    _emit(rows_to_csv(rows), output)


@main.command("dump-bank")
@click.option("--kernel", "kernel_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="JSON path (default stdout).")
def dump_bank(kernel_path, output):
    """Export the transformed-kernel bank of a kernel as JSON."""
    try:
        kernel = load_array(kernel_path)
    except ArrayFileError as exc:
        raise click.ClickException(str(exc))
    try:
        half_width(kernel.shape[0])
        bank = build_bank(kernel)
    except ValueError as exc:
        raise _usage(str(exc))
    _emit(bank.to_json() + "\n", output)


if __name__ == "__main__":
    sys.exit(main())
