"""Figures of merit for predicted strain histories.

rmse = sqrt(mean((target - pred)^2))
accuracy_percent = (1 - ||target - pred||_2 / ||target||_2) * 100

Accuracy is not clamped: it goes negative once the error norm exceeds the
target norm.
"""
from dataclasses import dataclass, asdict
from typing import Any, Dict, Tuple

import numpy as np

from utils.errors import DataError, ShapeError


@dataclass(frozen=True)
class EvalResult:
    rmse: float
    accuracy_percent: float
    n: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def summary(self) -> str:
        return f"RMSE={self.rmse:.3f} microstrain, Accuracy={self.accuracy_percent:.3f}%"


def _pair(pred, target) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(pred, dtype=np.float64).ravel()
    t = np.asarray(target, dtype=np.float64).ravel()
    if p.size != t.size:
        raise ShapeError(f"prediction length {p.size} does not match target length {t.size}")
    if p.size == 0:
        raise ShapeError("cannot score empty vectors")
    return p, t


def rmse(pred, target) -> float:
    p, t = _pair(pred, target)
    return float(np.sqrt(np.mean((t - p) ** 2)))


def accuracy_percent(pred, target) -> float:
    p, t = _pair(pred, target)
    target_norm = np.linalg.norm(t)
    if target_norm == 0:
        raise DataError("target has zero L2 norm; accuracy ratio is undefined")
    return float((1.0 - np.linalg.norm(t - p) / target_norm) * 100.0)


def evaluate(pred, target) -> EvalResult:
    p, t = _pair(pred, target)
    return EvalResult(rmse=rmse(p, t), accuracy_percent=accuracy_percent(p, t), n=int(p.size))
