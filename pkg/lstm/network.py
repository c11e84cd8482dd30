import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from core import ensure_finite, matvec, tanh_vec
from lstm.cell import CellState, StepTrace, cell_step
from lstm.config import NetworkConfig
from lstm.params import NetworkParams
from utils.errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass
class ForwardTrace:
    """steps[t][k] is the StepTrace of layer k at timestep t."""
    steps: List[List[StepTrace]]
    dense_pre: np.ndarray  # W1 h_T + b1
    dense_act: np.ndarray  # tanh of dense_pre

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def top_hidden(self) -> np.ndarray:
        return self.steps[-1][-1].h


def _run(net: NetworkParams, inputs: np.ndarray, cfg: NetworkConfig) -> Tuple[np.ndarray, ForwardTrace]:
    """Shared forward pass. `inputs` is (T, input) for one window or (B, T, input)."""
    batch = inputs.shape[0] if inputs.ndim == 3 else None
    states = [CellState.zeros(layer.hidden_size, batch) for layer in net.layers]
    steps = []
    for t in range(cfg.window_size):
        x = inputs[:, t, :] if batch is not None else inputs[t]
        record = []
        for k, layer in enumerate(net.layers):
            states[k], trace = cell_step(layer, x, states[k], cfg)
            record.append(trace)
            x = states[k].h
        steps.append(record)

    d = net.dense
    dense_pre = matvec(d.W1, states[-1].h) + d.b1
    dense_act = tanh_vec(dense_pre)
    pred = matvec(d.W2, dense_act) + d.b2
    return pred, ForwardTrace(steps=steps, dense_pre=dense_pre, dense_act=dense_act)


def _window_inputs(window, cfg: NetworkConfig) -> np.ndarray:
    w = np.asarray(window, dtype=np.float64)
    if w.ndim == 1:
        w = w[:, None]
    if w.shape != (cfg.window_size, cfg.input_size):
        raise ShapeError(f"window has shape {w.shape}, expected length {cfg.window_size} with {cfg.input_size} feature(s)")
    return w


def forward_window(net: NetworkParams, window, cfg: NetworkConfig) -> Tuple[float, ForwardTrace]:
    """Run one window through every layer from zero state and apply the dense head.

    Returns:
        (prediction, trace): scalar prediction for the window's last index
    """
    pred, trace = _run(net, _window_inputs(window, cfg), cfg)
    return float(pred[0]), trace


def forward_batch(net: NetworkParams, windows: Sequence, cfg: NetworkConfig) -> np.ndarray:
    """forward_window applied to each window, in order."""
    preds = np.empty(len(windows))
    for n, window in enumerate(windows):
        try:
            preds[n], _ = forward_window(net, window, cfg)
        except ShapeError as e:
            raise ShapeError(f"window {n}: {e}") from e
    return preds


def forward_sequences(net: NetworkParams, windows: np.ndarray, cfg: NetworkConfig) -> Tuple[np.ndarray, ForwardTrace]:
    """Batched forward pass over a (B, T) or (B, T, input) array; predictions have shape (B,)."""
    w = np.asarray(windows, dtype=np.float64)
    if w.ndim == 2:
        w = w[:, :, None]
    if w.ndim != 3 or w.shape[1:] != (cfg.window_size, cfg.input_size):
        raise ShapeError(f"windows have shape {w.shape}, expected (batch, {cfg.window_size}[, {cfg.input_size}])")
    pred, trace = _run(net, w, cfg)
    return pred[:, 0], trace


def predict_windows(net: NetworkParams, windows: np.ndarray, cfg: NetworkConfig, chunk: int = 256) -> np.ndarray:
    """Batched inference over many windows, in chunks of `chunk` rows."""
    windows = np.asarray(windows, dtype=np.float64)
    if len(windows) == 0:
        return np.empty(0)
    parts = [forward_sequences(net, windows[s:s + chunk], cfg)[0] for s in range(0, len(windows), chunk)]
    return ensure_finite(np.concatenate(parts), "predictions")
