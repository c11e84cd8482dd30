import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional

import numpy as np

from dataset.csv_io import RunSeries
from utils.errors import DataError

logger = logging.getLogger(__name__)


@dataclass
class NormStats:
    """Per-channel z-score statistics (population standard deviation)."""
    mean: Dict[str, float] = field(default_factory=dict)
    std: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Dict[str, float]]:
        return {"mean": dict(self.mean), "std": dict(self.std)}

    @classmethod
    def from_dict(cls, data) -> "NormStats":
        return cls(mean={k: float(v) for k, v in data["mean"].items()},
                   std={k: float(v) for k, v in data["std"].items()})

    def _check(self, label: str) -> None:
        if label not in self.mean or label not in self.std:
            raise DataError(f"no normalisation statistics for channel {label!r}")

    def normalize(self, values, label: str) -> np.ndarray:
        self._check(label)
        return (np.asarray(values, dtype=np.float64) - self.mean[label]) / self.std[label]

    def denormalize(self, values, label: str) -> np.ndarray:
        self._check(label)
        return np.asarray(values, dtype=np.float64) * self.std[label] + self.mean[label]


def fit_normalizer(run: RunSeries, channels: Iterable[str], prefix: Optional[int] = None) -> NormStats:
    """
    Fit z-score statistics for the selected channels.

    Args:
        run: Source run
        channels: Channel labels to fit
        prefix: Fit on the first `prefix` samples only (holdout mode); None uses all

    Raises:
        DataError: a selected channel is constant over the fitted range
    """
    stats = NormStats()
    for label in channels:
        values = run.channel(label)
        if prefix is not None:
            values = values[:prefix]
        std = float(np.std(values))
        if not std > 0:
            raise DataError(f"channel {label!r} is constant; cannot normalise")
        stats.mean[label] = float(np.mean(values))
        stats.std[label] = std
    return stats
