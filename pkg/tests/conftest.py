import numpy as np
import pytest


def brute_force_valid(field: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Reference valid convolution: explicit quadruple loop, no flip."""
    h, w = field.shape
    k = kernel.shape[0]
    out = np.zeros((h - k + 1, w - k + 1))
    for y in range(h - k + 1):
        for x in range(w - k + 1):
            acc = 0.0
            for i in range(k):
                for j in range(k):
                    acc += kernel[i, j] * field[y + i, x + j]
            out[y, x] = acc
    return out


@pytest.fixture
def loop_conv():
    return brute_force_valid
