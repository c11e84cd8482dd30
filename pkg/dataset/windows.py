"""Sliding-window supervised samples.

Sample i (0-based) pairs source[i : i+T] with target[i+T-1]; stride 1.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from utils.errors import DataError, ShapeError

logger = logging.getLogger(__name__)


@dataclass
class WindowedDataset:
    T: int
    windows: np.ndarray      # (n, T)
    targets: np.ndarray      # (n,)
    end_index: np.ndarray    # series index of each window's last sample
    source_label: str = "source"
    target_label: str = "target"

    def __len__(self) -> int:
        return len(self.targets)

    def subset(self, start: int, stop: int) -> "WindowedDataset":
        return WindowedDataset(T=self.T, windows=self.windows[start:stop], targets=self.targets[start:stop],
                               end_index=self.end_index[start:stop],
                               source_label=self.source_label, target_label=self.target_label)


def make_windows(source, target, T: int, source_label: str = "source",
                 target_label: str = "target") -> WindowedDataset:
    """Build N - T + 1 windows from equal-length source and target series."""
    source = np.asarray(source, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if source.ndim != 1 or target.ndim != 1 or len(source) != len(target):
        raise ShapeError(f"source and target must be 1-D and equal length, got {source.shape} and {target.shape}")
    N = len(source)
    if not 1 <= T <= N:
        raise ShapeError(f"window size {T} must lie in [1, {N}] for a series of length {N}")
    return WindowedDataset(
        T=T,
        windows=sliding_window_view(source, T).copy(),
        targets=target[T - 1:].copy(),
        end_index=np.arange(T - 1, N),
        source_label=source_label,
        target_label=target_label,
    )


def windows_from_runs(series: Sequence[Tuple[np.ndarray, np.ndarray]], T: int,
                      source_label: str = "source", target_label: str = "target") -> WindowedDataset:
    """Window each (source, target) pair separately and concatenate.

    Windows never span two runs; runs shorter than T are skipped with a warning.
    """
    parts = []
    for r, (source, target) in enumerate(series):
        if len(source) < T:
            logger.warning(f"Skipping run {r}: length {len(source)} is shorter than window size {T}")
            continue
        parts.append(make_windows(source, target, T, source_label, target_label))
    if not parts:
        return WindowedDataset(T=T, windows=np.empty((0, T)), targets=np.empty(0),
                               end_index=np.empty(0, dtype=int),
                               source_label=source_label, target_label=target_label)
    return WindowedDataset(
        T=T,
        windows=np.concatenate([p.windows for p in parts]),
        targets=np.concatenate([p.targets for p in parts]),
        end_index=np.concatenate([p.end_index for p in parts]),
        source_label=source_label,
        target_label=target_label,
    )


def split_chronological(ds: WindowedDataset, ratio: float) -> Tuple[WindowedDataset, WindowedDataset]:
    """First ceil(ratio * n) samples train, the rest validate; order preserved."""
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"split ratio must lie in (0, 1), got {ratio}")
    n = len(ds)
    if n == 0:
        raise DataError("cannot split an empty dataset")
    # guard against ratio*n landing a hair above an integer
    n_train = math.ceil(round(ratio * n, 9))
    if n_train == 0 or n_train == n:
        raise DataError(f"split ratio {ratio} on {n} samples leaves one side empty ({n_train}/{n - n_train})")
    return ds.subset(0, n_train), ds.subset(n_train, n)
