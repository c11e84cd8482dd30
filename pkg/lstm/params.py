import logging
from dataclasses import dataclass, fields
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from core import Prng, prng_matrix
from lstm.config import NetworkConfig
from utils.errors import ShapeError

logger = logging.getLogger(__name__)

INPUT_WEIGHTS = ("W_xi", "W_xf", "W_xc", "W_xo")
RECURRENT_WEIGHTS = ("W_hi", "W_hf", "W_hc", "W_ho")
PEEPHOLE_WEIGHTS = ("W_ci", "W_cf", "W_co")
BIASES = ("b_i", "b_f", "b_c", "b_o")

FORGET_BIAS_INIT = 1.0


@dataclass
class LstmLayerParams:
    """Weights of one peephole LSTM layer.

    Peephole weights are (hidden x hidden) matrices in full-matrix mode,
    length-hidden vectors in diagonal mode and None when peepholes are off.
    """
    W_xi: np.ndarray
    W_xf: np.ndarray
    W_xc: np.ndarray
    W_xo: np.ndarray
    W_hi: np.ndarray
    W_hf: np.ndarray
    W_hc: np.ndarray
    W_ho: np.ndarray
    W_ci: Optional[np.ndarray]
    W_cf: Optional[np.ndarray]
    W_co: Optional[np.ndarray]
    b_i: np.ndarray
    b_f: np.ndarray
    b_c: np.ndarray
    b_o: np.ndarray

    @property
    def hidden_size(self) -> int:
        return self.W_hi.shape[0]

    @property
    def input_size(self) -> int:
        return self.W_xi.shape[1]

    def named_tensors(self) -> Iterator[Tuple[str, np.ndarray]]:
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None:
                yield f.name, value


@dataclass
class DenseParams:
    """Regression head: pred = W2 tanh(W1 h_T + b1) + b2."""
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray

    def named_tensors(self) -> Iterator[Tuple[str, np.ndarray]]:
        for f in fields(self):
            yield f.name, getattr(self, f.name)


@dataclass
class NetworkParams:
    layers: List[LstmLayerParams]
    dense: DenseParams

    def named_tensors(self) -> List[Tuple[str, np.ndarray]]:
        """All tensors in a fixed order, named like "lstm.0.W_xi" / "dense.W1"."""
        named = []
        for k, layer in enumerate(self.layers):
            named.extend((f"lstm.{k}.{name}", t) for name, t in layer.named_tensors())
        named.extend((f"dense.{name}", t) for name, t in self.dense.named_tensors())
        return named

    def map(self, fn) -> "NetworkParams":
        """New NetworkParams with `fn` applied to every tensor."""
        layers = [
            LstmLayerParams(**{f.name: (None if getattr(l, f.name) is None else fn(getattr(l, f.name)))
                               for f in fields(l)})
            for l in self.layers
        ]
        dense = DenseParams(**{f.name: fn(getattr(self.dense, f.name)) for f in fields(self.dense)})
        return NetworkParams(layers=layers, dense=dense)

    def copy(self) -> "NetworkParams":
        return self.map(np.copy)

    def zeros_like(self) -> "NetworkParams":
        return self.map(np.zeros_like)

    @property
    def size(self) -> int:
        return sum(t.size for _, t in self.named_tensors())

    def flatten(self) -> np.ndarray:
        return np.concatenate([t.ravel() for _, t in self.named_tensors()])

    def unflatten(self, vector: np.ndarray) -> "NetworkParams":
        """Inverse of flatten: same structure, values taken from `vector`."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.size != self.size:
            raise ShapeError(f"expected {self.size} values, got {vector.size}")
        offset = 0

        def take(t):
            nonlocal offset
            chunk = vector[offset:offset + t.size].reshape(t.shape).copy()
            offset += t.size
            return chunk

        return self.map(take)


# Gradients share the parameter structure, one entry per tensor
GradientSet = NetworkParams


def _uniform(rng: Prng, shape, bound: float) -> np.ndarray:
    rows, cols = (shape[0], shape[1]) if len(shape) == 2 else (1, shape[0])
    return prng_matrix(rng, rows, cols, -bound, bound).reshape(shape)


def init_network(config: NetworkConfig, rng: Prng) -> NetworkParams:
    """
    Initialise a network for `config`.

    Weights are uniform in [-1/sqrt(H), 1/sqrt(H)] with H the hidden size of the
    layer the weight feeds; biases are zero except the forget gate bias (1.0).
    Draw order: per layer input, recurrent then peephole weights, then W1, W2.
    """
    layers = []
    for k, hidden in enumerate(config.lstm_hidden_sizes):
        n_in = config.layer_input_size(k)
        bound = 1.0 / np.sqrt(hidden)
        tensors = {name: _uniform(rng, (hidden, n_in), bound) for name in INPUT_WEIGHTS}
        tensors.update({name: _uniform(rng, (hidden, hidden), bound) for name in RECURRENT_WEIGHTS})
        for name in PEEPHOLE_WEIGHTS:
            if config.peephole_mode == "full-matrix":
                tensors[name] = _uniform(rng, (hidden, hidden), bound)
            elif config.peephole_mode == "diagonal":
                tensors[name] = _uniform(rng, (hidden,), bound)
            else:
                tensors[name] = None
        tensors.update({name: np.zeros(hidden) for name in BIASES})
        tensors["b_f"][:] = FORGET_BIAS_INIT
        layers.append(LstmLayerParams(**tensors))

    top = config.lstm_hidden_sizes[-1]
    dense = DenseParams(
        W1=_uniform(rng, (config.dense_hidden, top), 1.0 / np.sqrt(config.dense_hidden)),
        b1=np.zeros(config.dense_hidden),
        W2=_uniform(rng, (1, config.dense_hidden), 1.0),
        b2=np.zeros(1),
    )
    logger.debug(f"Initialised network {config.lstm_hidden_sizes} -> {config.dense_hidden} -> 1")
    return NetworkParams(layers=layers, dense=dense)


def expected_shapes(config: NetworkConfig) -> Dict[str, Tuple[int, ...]]:
    """Tensor name -> shape for `config`, in named_tensors order."""
    shapes: Dict[str, Tuple[int, ...]] = {}
    for k, hidden in enumerate(config.lstm_hidden_sizes):
        n_in = config.layer_input_size(k)
        shapes.update({f"lstm.{k}.{name}": (hidden, n_in) for name in INPUT_WEIGHTS})
        shapes.update({f"lstm.{k}.{name}": (hidden, hidden) for name in RECURRENT_WEIGHTS})
        if config.peephole_mode != "none":
            shape = (hidden, hidden) if config.peephole_mode == "full-matrix" else (hidden,)
            shapes.update({f"lstm.{k}.{name}": shape for name in PEEPHOLE_WEIGHTS})
        shapes.update({f"lstm.{k}.{name}": (hidden,) for name in BIASES})
    top = config.lstm_hidden_sizes[-1]
    shapes.update({"dense.W1": (config.dense_hidden, top), "dense.b1": (config.dense_hidden,),
                   "dense.W2": (1, config.dense_hidden), "dense.b2": (1,)})
    return shapes


def params_from_tensors(config: NetworkConfig, tensors: Dict[str, np.ndarray]) -> NetworkParams:
    """Assemble NetworkParams from a name -> array mapping (see expected_shapes)."""
    layers = []
    for k in range(len(config.lstm_hidden_sizes)):
        layer = {}
        for name in INPUT_WEIGHTS + RECURRENT_WEIGHTS + PEEPHOLE_WEIGHTS + BIASES:
            layer[name] = tensors.get(f"lstm.{k}.{name}")
        layers.append(LstmLayerParams(**layer))
    dense = DenseParams(**{name: tensors[f"dense.{name}"] for name in ("W1", "b1", "W2", "b2")})
    params = NetworkParams(layers=layers, dense=dense)
    validate_params(params, config)
    return params


def validate_params(params: NetworkParams, config: NetworkConfig) -> None:
    """Raise ShapeError naming the first tensor that disagrees with `config`."""
    if len(params.layers) != len(config.lstm_hidden_sizes):
        raise ShapeError(f"expected {len(config.lstm_hidden_sizes)} LSTM layers, got {len(params.layers)}")
    expected = expected_shapes(config)
    named = dict(params.named_tensors())
    for name in named.keys() - expected.keys():
        raise ShapeError(f"{name} is not used by peephole_mode={config.peephole_mode!r}")
    for name, shape in expected.items():
        got = named[name].shape if name in named else None
        if got != shape:
            raise ShapeError(f"{name} has shape {got}, expected {shape}")
