"""Peephole LSTM cell.

    i_t = sigmoid(W_xi x_t + W_hi h_{t-1} + W_ci c_{t-1} + b_i)
    f_t = sigmoid(W_xf x_t + W_hf h_{t-1} + W_cf c_{t-1} + b_f)
    c_t = f_t * c_{t-1} + i_t * tanh(W_xc x_t + W_hc h_{t-1} + b_c)
    o_t = sigmoid(W_xo x_t + W_ho h_{t-1} + W_co c_{t-1} + b_o)
    h_t = o_t * tanh(c_t)

With output_gate_cell="current" the output gate peephole reads c_t instead.
All functions accept a single step (1-D arrays) or a batch (rows = samples).
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core import matvec, sigmoid, tanh_vec
from lstm.config import NetworkConfig
from lstm.params import LstmLayerParams
from utils.errors import ShapeError


@dataclass
class CellState:
    h: np.ndarray
    c: np.ndarray

    @classmethod
    def zeros(cls, hidden: int, batch: Optional[int] = None) -> "CellState":
        shape = (hidden,) if batch is None else (batch, hidden)
        return cls(h=np.zeros(shape), c=np.zeros(shape))


@dataclass
class StepTrace:
    """Intermediates of one cell step, kept for the backward pass."""
    x: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    o: np.ndarray
    g_pre: np.ndarray  # candidate tanh argument
    g: np.ndarray
    c: np.ndarray
    tanh_c: np.ndarray
    h: np.ndarray


def peephole(W: Optional[np.ndarray], c: np.ndarray):
    """W_c* c term: matrix product, elementwise product (diagonal) or zero."""
    if W is None:
        return 0.0
    if W.ndim == 2:
        return matvec(W, c)
    return c * W


def cell_step(p: LstmLayerParams, x_t: np.ndarray, prev: CellState,
              cfg: NetworkConfig) -> Tuple[CellState, StepTrace]:
    """Advance one layer by one timestep."""
    if x_t.shape[-1] != p.input_size:
        raise ShapeError(f"cell input has size {x_t.shape[-1]}, layer expects {p.input_size}")
    if prev.h.shape[-1] != p.hidden_size or prev.c.shape != prev.h.shape:
        raise ShapeError(f"cell state shapes h={prev.h.shape}, c={prev.c.shape} do not match hidden size {p.hidden_size}")
    if x_t.ndim != prev.h.ndim:
        raise ShapeError(f"input rank {x_t.ndim} does not match state rank {prev.h.ndim}")

    h_prev, c_prev = prev.h, prev.c
    i = sigmoid(matvec(p.W_xi, x_t) + matvec(p.W_hi, h_prev) + peephole(p.W_ci, c_prev) + p.b_i)
    f = sigmoid(matvec(p.W_xf, x_t) + matvec(p.W_hf, h_prev) + peephole(p.W_cf, c_prev) + p.b_f)
    g_pre = matvec(p.W_xc, x_t) + matvec(p.W_hc, h_prev) + p.b_c
    g = tanh_vec(g_pre)
    c = f * c_prev + i * g
    c_gate = c_prev if cfg.output_gate_cell == "previous" else c
    o = sigmoid(matvec(p.W_xo, x_t) + matvec(p.W_ho, h_prev) + peephole(p.W_co, c_gate) + p.b_o)
    tanh_c = tanh_vec(c)
    h = o * tanh_c

    trace = StepTrace(x=x_t, h_prev=h_prev, c_prev=c_prev, i=i, f=f, o=o,
                      g_pre=g_pre, g=g, c=c, tanh_c=tanh_c, h=h)
    return CellState(h=h, c=c), trace
