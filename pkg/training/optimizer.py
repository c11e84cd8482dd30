import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from lstm import GradientSet, NetworkParams

logger = logging.getLogger(__name__)

CLIP_TOLERANCE = 1e-12


def global_norm(grads: GradientSet) -> float:
    return float(np.sqrt(sum(np.sum(t * t) for _, t in grads.named_tensors())))


def clip_global_norm(grads: GradientSet, max_norm: float) -> GradientSet:
    """Rescale all gradients jointly so their global L2 norm is at most max_norm."""
    if max_norm <= 0:
        raise ValueError(f"max_norm must be positive, got {max_norm}")
    norm = global_norm(grads)
    if norm <= max_norm + CLIP_TOLERANCE:
        return grads
    scale = max_norm / norm
    logger.debug(f"Clipping gradient norm {norm:.4g} to {max_norm}")
    return grads.map(lambda t: t * scale)


@dataclass
class AdamState:
    """First/second moment estimates over the flattened parameter vector."""
    m: Optional[np.ndarray] = None
    v: Optional[np.ndarray] = None
    step: int = 0


def optimizer_step(state: AdamState, params: NetworkParams, grads: GradientSet,
                   cfg) -> Tuple[NetworkParams, AdamState]:
    """
    One bias-corrected adaptive-moment update.

    Args:
        state: Moments and step counter from the previous call
        params: Current parameters (left untouched)
        grads: Gradients shaped like `params`
        cfg: Object with learning_rate, beta1, beta2, eps (a TrainConfig)

    Returns:
        (new_params, new_state)
    """
    theta = params.flatten()
    g = grads.flatten()
    if g.shape != theta.shape:
        raise ValueError(f"gradient size {g.size} does not match parameter size {theta.size}")
    m = np.zeros_like(theta) if state.m is None else state.m
    v = np.zeros_like(theta) if state.v is None else state.v
    step = state.step + 1

    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g
    m_hat = m / (1.0 - cfg.beta1 ** step)
    v_hat = v / (1.0 - cfg.beta2 ** step)
    theta = theta - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.eps)

    return params.unflatten(theta), AdamState(m=m, v=v, step=step)


class Adam:
    """Stateful wrapper around optimizer_step."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.state = AdamState()

    def step(self, params: NetworkParams, grads: GradientSet) -> NetworkParams:
        params, self.state = optimizer_step(self.state, params, grads, self.cfg)
        return params
