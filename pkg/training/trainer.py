import logging
import sys
import time
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from core import Prng
from evaluation.metrics import rmse
from lstm import NetworkConfig, NetworkParams, init_network, predict_windows
from training.backprop import bptt_gradients
from training.optimizer import Adam, clip_global_norm
from utils.errors import NumericDivergenceError, ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    epochs: int = 200
    batch_size: int = 32
    clip_norm: float = 5.0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    early_stop_patience: int = 20
    seed: int = 0

    def __post_init__(self):
        for name in ("learning_rate", "epochs", "batch_size", "clip_norm", "eps", "early_stop_patience"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("beta1", "beta2"):
            if not 0.0 < getattr(self, name) < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {getattr(self, name)}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrainConfig":
        return cls(**data)


@dataclass
class EpochRecord:
    epoch: int
    train_loss: float
    val_rmse: float
    seconds: float


@dataclass
class TrainReport:
    """Everything needed to audit and rerun a training run.

    val_rmse is in model (normalised) units; `final` holds microstrain metrics
    filled in by the pipeline.
    """
    network: Dict[str, Any]
    train: Dict[str, Any]
    seed: int
    epochs: List[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_val_rmse: float = float("inf")
    stopped_early: bool = False
    final: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            for record in data["epochs"]:
                record.pop("seconds")
        return data


def _as_arrays(dataset) -> Tuple[np.ndarray, np.ndarray]:
    return np.asarray(dataset.windows, dtype=np.float64), np.asarray(dataset.targets, dtype=np.float64)


def train(config: NetworkConfig, tcfg: TrainConfig, train_set, val_set,
          show_progress: Optional[bool] = None) -> Tuple[NetworkParams, TrainReport]:
    """
    Fit a network with shuffled minibatches, clipping and Adam.

    Args:
        config: Network architecture
        tcfg: Optimisation settings and seed
        train_set, val_set: Objects exposing `windows` (n, T) and `targets` (n,)
        show_progress: tqdm bar over epochs; defaults to on when stderr is a TTY

    Returns:
        (params, report): parameters from the epoch with the best validation RMSE
    """
    X, y = _as_arrays(train_set)
    X_val, y_val = _as_arrays(val_set)
    if len(X) == 0:
        raise ShapeError("training set is empty")
    if len(X_val) == 0:
        raise ShapeError("validation set is empty")
    if X.shape[1] != config.window_size or X_val.shape[1] != config.window_size:
        raise ShapeError(f"dataset window size {X.shape[1]} does not match config window size {config.window_size}")

    rng = Prng(tcfg.seed)
    net = init_network(config, rng)
    optimizer = Adam(tcfg)
    report = TrainReport(network=config.to_dict(), train=tcfg.to_dict(), seed=tcfg.seed)
    best_net = net

    if show_progress is None:
        show_progress = sys.stderr.isatty()
    n = len(X)
    logger.info(f"Training {config.lstm_hidden_sizes} on {n} windows, validating on {len(X_val)}")

    bar = tqdm(range(1, tcfg.epochs + 1), desc="Training", disable=not show_progress)
    for epoch in bar:
        start = time.perf_counter()
        order = rng.permutation(n)
        total = 0.0
        for b, lo in enumerate(range(0, n, tcfg.batch_size)):
            idx = order[lo:lo + tcfg.batch_size]
            try:
                loss, grads = bptt_gradients(net, X[idx], y[idx], config)
            except NumericDivergenceError as e:
                raise NumericDivergenceError(f"epoch {epoch}, batch {b}: {e}") from e
            net = optimizer.step(net, clip_global_norm(grads, tcfg.clip_norm))
            total += loss * len(idx)

        try:
            val = rmse(predict_windows(net, X_val, config), y_val)
        except NumericDivergenceError as e:
            raise NumericDivergenceError(f"epoch {epoch}, validation: {e}") from e
        record = EpochRecord(epoch=epoch, train_loss=total / n, val_rmse=val,
                             seconds=time.perf_counter() - start)
        report.epochs.append(record)
        bar.set_postfix(loss=f"{record.train_loss:.4g}", val_rmse=f"{val:.4g}")
        logger.debug(f"epoch {epoch}: loss={record.train_loss:.6g} val_rmse={val:.6g} "
                     f"({record.seconds:.2f}s)")

        if val < report.best_val_rmse:
            report.best_val_rmse = val
            report.best_epoch = epoch
            best_net = net
        elif epoch - report.best_epoch >= tcfg.early_stop_patience:
            report.stopped_early = True
            logger.info(f"Early stop at epoch {epoch}; best epoch {report.best_epoch}")
            break

    logger.info(f"Best validation RMSE {report.best_val_rmse:.6g} at epoch {report.best_epoch}")
    return best_net, report
