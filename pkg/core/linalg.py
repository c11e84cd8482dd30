import logging
from typing import Callable

import numpy as np

from core.prng import Prng
from utils.errors import ShapeError, NumericDivergenceError

logger = logging.getLogger(__name__)

# Dense float64 arrays: Matrix is 2-D row-major, Vector is 1-D
Matrix = np.ndarray
Vector = np.ndarray

DTYPE = np.float64


def ensure_finite(values: np.ndarray, name: str = "array") -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NumericDivergenceError(f"{name} contains non-finite values")
    return values


def matvec(m: Matrix, v: np.ndarray) -> np.ndarray:
    """Matrix-vector product with shape checking; a 2-D `v` is a batch of row vectors."""
    if m.ndim != 2 or v.ndim not in (1, 2):
        raise ShapeError(f"matvec expects a 2-D matrix and 1-D or 2-D vectors, got {m.shape} and {v.shape}")
    if m.shape[1] != v.shape[-1]:
        raise ShapeError(f"matvec shape mismatch: matrix {m.shape[0]}x{m.shape[1]} vs vector of length {v.shape[-1]}")
    return ensure_finite(v @ m.T, "matvec result")



def sigmoid(v: np.ndarray) -> np.ndarray:
    """Elementwise logistic function, stable for large |x|."""
    v = np.asarray(v, dtype=DTYPE)
    out = np.empty_like(v)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    ez = np.exp(v[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def tanh_vec(v: np.ndarray) -> np.ndarray:
    return np.tanh(np.asarray(v, dtype=DTYPE))


def finite_diff_gradient(f: Callable[[Vector], float], at: Vector, h: float = 1e-5) -> Vector:
    """
    Central-difference gradient of a scalar function.

    Args:
        f: Function of a parameter vector returning a scalar
        at: Point to differentiate at (not modified)
        h: Step size, must be positive

    Returns:
        Vector: (f(x + h e_i) - f(x - h e_i)) / 2h for every coordinate i
    """
    if h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    x = np.array(at, dtype=DTYPE)
    grad = np.zeros_like(x)
    for i in range(x.size):
        orig = x.flat[i]
        x.flat[i] = orig + h
        f_plus = float(f(x))
        x.flat[i] = orig - h
        f_minus = float(f(x))
        x.flat[i] = orig
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise NumericDivergenceError(f"non-finite function value while perturbing coordinate {i}")
        grad.flat[i] = (f_plus - f_minus) / (2.0 * h)
    return grad


def prng_matrix(rng: Prng, rows: int, cols: int, lo: float, hi: float) -> Matrix:
    """Matrix of i.i.d. uniform draws in [lo, hi), filled row-major."""
    if not lo < hi:
        raise ValueError(f"prng_matrix needs lo < hi, got lo={lo}, hi={hi}")
    draws = rng.uniform(rows * cols)
    m = (lo + (hi - lo) * draws).reshape(rows, cols)
    # lo + (hi-lo)*u can round up to hi when the range is tiny
    return np.where(m >= hi, np.nextafter(hi, lo), m)
