from core.linalg import (
    Matrix,
    Vector,
    ensure_finite,
    finite_diff_gradient,
    matvec,
    prng_matrix,
    sigmoid,
    tanh_vec,
)
from core.prng import PRNG_ALGORITHM, Prng

__all__ = [
    "Matrix", "Vector", "Prng", "PRNG_ALGORITHM",
    "ensure_finite",
    "finite_diff_gradient", "matvec", "prng_matrix", "sigmoid", "tanh_vec",
]
