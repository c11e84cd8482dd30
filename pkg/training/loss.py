import numpy as np

from utils.errors import ShapeError


def mse_loss(pred, target) -> float:
    """Mean of squared differences."""
    p = np.asarray(pred, dtype=np.float64).ravel()
    t = np.asarray(target, dtype=np.float64).ravel()
    if p.size != t.size:
        raise ShapeError(f"prediction length {p.size} does not match target length {t.size}")
    if p.size == 0:
        raise ShapeError("mse_loss needs at least one sample")
    return float(np.mean((p - t) ** 2))
