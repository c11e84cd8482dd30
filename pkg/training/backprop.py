"""Exact gradients of the batch MSE through the dense head and every LSTM layer.

Per timestep, walking backwards (dh, dc include the recurrent carry):

    da_o = dh * tanh(c_t) * o(1-o)
    dc   = dc_carry + dh * o * (1 - tanh(c_t)^2)   [+ W_co^T da_o if gate reads c_t]
    da_i = dc * g * i(1-i);  da_f = dc * c_{t-1} * f(1-f);  da_g = dc * i * (1-g^2)
    dc_{t-1} = dc * f + W_ci^T da_i + W_cf^T da_f   [+ W_co^T da_o if gate reads c_{t-1}]
    dh_{t-1} = W_hi^T da_i + W_hf^T da_f + W_hc^T da_g + W_ho^T da_o
"""
import logging
from typing import Tuple

import numpy as np

from lstm import NetworkConfig, NetworkParams, GradientSet, forward_sequences
from training.loss import mse_loss
from utils.errors import NumericDivergenceError, ShapeError

logger = logging.getLogger(__name__)


def _peephole_back(W, da):
    """Gradient reaching c through a peephole term."""
    if W is None:
        return 0.0
    if W.ndim == 2:
        return da @ W
    return da * W


def _peephole_grad(G, da, c):
    if G is None:
        return
    if G.ndim == 2:
        G += da.T @ c
    else:
        G += np.sum(da * c, axis=0)


def bptt_gradients(net: NetworkParams, windows, targets, cfg: NetworkConfig) -> Tuple[float, GradientSet]:
    """
    Batch loss and its gradient with respect to every parameter.

    Args:
        net: Current parameters
        windows: (B, T) or (B, T, input) array of input windows
        targets: (B,) targets aligned with the last index of each window
        cfg: Network configuration

    Returns:
        (loss, grads): mean squared error over the batch and its exact gradient
    """
    targets = np.asarray(targets, dtype=np.float64).ravel()
    if len(targets) == 0:
        raise ShapeError("bptt_gradients needs a non-empty batch")
    if len(windows) != len(targets):
        raise ShapeError(f"{len(windows)} windows but {len(targets)} targets")

    pred, trace = forward_sequences(net, windows, cfg)
    loss = mse_loss(pred, targets)
    if not np.isfinite(loss):
        raise NumericDivergenceError(f"non-finite loss {loss} (parameter blow-up)")

    grads = net.zeros_like()
    batch = len(targets)
    T = cfg.window_size

    # dense head
    d, gd = net.dense, grads.dense
    dpred = ((2.0 / batch) * (pred - targets))[:, None]
    gd.W2 += dpred.T @ trace.dense_act
    gd.b2 += dpred.sum(axis=0)
    dz1 = (dpred @ d.W2) * (1.0 - trace.dense_act ** 2)
    gd.W1 += dz1.T @ trace.top_hidden
    gd.b1 += dz1.sum(axis=0)

    dh_in = [None] * T
    dh_in[T - 1] = dz1 @ d.W1

    read_current = cfg.output_gate_cell == "current"
    for k in reversed(range(len(net.layers))):
        p, g = net.layers[k], grads.layers[k]
        dh_carry = np.zeros((batch, p.hidden_size))
        dc_carry = np.zeros((batch, p.hidden_size))
        dx_seq = [None] * T

        for t in reversed(range(T)):
            s = trace.steps[t][k]
            dh = dh_carry if dh_in[t] is None else dh_carry + dh_in[t]

            da_o = dh * s.tanh_c * s.o * (1.0 - s.o)
            dc = dc_carry + dh * s.o * (1.0 - s.tanh_c ** 2)
            if read_current:
                dc = dc + _peephole_back(p.W_co, da_o)
            da_i = dc * s.g * s.i * (1.0 - s.i)
            da_f = dc * s.c_prev * s.f * (1.0 - s.f)
            da_g = dc * s.i * (1.0 - s.g ** 2)

            dc_carry = dc * s.f + _peephole_back(p.W_ci, da_i) + _peephole_back(p.W_cf, da_f)
            if not read_current:
                dc_carry = dc_carry + _peephole_back(p.W_co, da_o)
            dh_carry = da_i @ p.W_hi + da_f @ p.W_hf + da_g @ p.W_hc + da_o @ p.W_ho
            if k > 0:
                dx_seq[t] = da_i @ p.W_xi + da_f @ p.W_xf + da_g @ p.W_xc + da_o @ p.W_xo

            g.W_xi += da_i.T @ s.x
            g.W_xf += da_f.T @ s.x
            g.W_xc += da_g.T @ s.x
            g.W_xo += da_o.T @ s.x
            g.W_hi += da_i.T @ s.h_prev
            g.W_hf += da_f.T @ s.h_prev
            g.W_hc += da_g.T @ s.h_prev
            g.W_ho += da_o.T @ s.h_prev
            _peephole_grad(g.W_ci, da_i, s.c_prev)
            _peephole_grad(g.W_cf, da_f, s.c_prev)
            _peephole_grad(g.W_co, da_o, s.c if read_current else s.c_prev)
            g.b_i += da_i.sum(axis=0)
            g.b_f += da_f.sum(axis=0)
            g.b_c += da_g.sum(axis=0)
            g.b_o += da_o.sum(axis=0)

        dh_in = dx_seq

    return loss, grads


def batch_loss(net: NetworkParams, windows, targets, cfg: NetworkConfig) -> float:
    pred, _ = forward_sequences(net, windows, cfg)
    return mse_loss(pred, targets)
