"""Self-describing JSON persistence of trained models.

Document layout (keys sorted on write):

    {
      "format_version": 1,
      "created_at": "1970-01-01T00:00:00+00:00",
      "seed": 7, "prng": "PCG64",
      "source_label": "loc1", "target_label": "loc3", "protocol": "in-run",
      "network": {...NetworkConfig...},
      "train": {...TrainConfig...},
      "normalization": {"mean": {...}, "std": {...}},
      "parameters": {"lstm.0.W_xi": [[...]], ..., "dense.b2": [...]}
    }

Floats are written with Python's shortest round-trip repr, so a load
reproduces every parameter bit for bit.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from core import PRNG_ALGORITHM
from dataset.normalize import NormStats
from lstm import NetworkConfig, NetworkParams, expected_shapes, params_from_tensors
from training.trainer import TrainConfig
from utils.errors import ArtifactError, DataError
from utils.io import dumps_json, atomic_write_text

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass
class ModelArtifact:
    network: NetworkConfig
    train: TrainConfig
    norm: NormStats
    params: NetworkParams
    seed: int
    source_label: str
    target_label: str
    created_at: str
    protocol: str = "in-run"
    format_version: int = FORMAT_VERSION

    def to_document(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "created_at": self.created_at,
            "seed": self.seed,
            "prng": PRNG_ALGORITHM,
            "source_label": self.source_label,
            "target_label": self.target_label,
            "protocol": self.protocol,
            "network": self.network.to_dict(),
            "train": self.train.to_dict(),
            "normalization": self.norm.to_dict(),
            "parameters": {name: t.tolist() for name, t in self.params.named_tensors()},
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModelArtifact):
            return NotImplemented
        return dumps_json(self.to_document()) == dumps_json(other.to_document())


def save(artifact: ModelArtifact, path: Union[str, Path]) -> None:
    """Write the artifact as deterministic JSON (atomic replace)."""
    try:
        atomic_write_text(path, dumps_json(artifact.to_document()))
    except OSError as e:
        raise DataError(f"cannot write model artifact to {path}: {e}") from e
    logger.info(f"Saved model artifact to {path}")


def _require(doc: Dict[str, Any], key: str):
    if key not in doc:
        raise ArtifactError("missing field", field=key)
    return doc[key]


def _tensor(name: str, value, shape) -> np.ndarray:
    try:
        array = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError):
        raise ArtifactError("not a rectangular numeric array", field=name)
    if array.shape != tuple(shape):
        raise ArtifactError(f"shape {array.shape} does not match config shape {tuple(shape)}", field=name)
    if not np.all(np.isfinite(array)):
        raise ArtifactError("contains non-finite values", field=name)
    return array


def _seed(doc: Dict[str, Any]) -> int:
    seed = _require(doc, "seed")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise ArtifactError(f"expected a 64-bit unsigned integer, got {seed!r}", field="seed")
    return seed


def _label(doc: Dict[str, Any], key: str, norm: NormStats) -> str:
    label = _require(doc, key)
    if not isinstance(label, str) or not label:
        raise ArtifactError(f"expected a channel label, got {label!r}", field=key)
    if label not in norm.mean:
        raise ArtifactError(f"channel {label!r} has no normalisation statistics", field=key)
    return label


def load(path: Union[str, Path]) -> ModelArtifact:
    """
    Read and fully validate an artifact.

    Raises:
        ArtifactError: parse failure, unknown format_version, a tensor whose shape
            disagrees with the stored config, non-finite values, or a field of the
            wrong type; the message names the offending field
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"{path} not found")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except UnicodeDecodeError as e:
        raise ArtifactError(f"parse error in {path}: not valid UTF-8 at byte {e.start}")
    except json.JSONDecodeError as e:
        raise ArtifactError(f"parse error in {path}: {e}")
    if not isinstance(doc, dict):
        raise ArtifactError(f"{path} is not a JSON object")

    version = _require(doc, "format_version")
    if version != FORMAT_VERSION:
        raise ArtifactError(f"unsupported version {version!r} (expected {FORMAT_VERSION})", field="format_version")

    try:
        network = NetworkConfig.from_dict(_require(doc, "network"))
    except (TypeError, ValueError) as e:
        raise ArtifactError(str(e), field="network")
    try:
        train = TrainConfig.from_dict(_require(doc, "train"))
    except (TypeError, ValueError) as e:
        raise ArtifactError(str(e), field="train")
    try:
        norm = NormStats.from_dict(_require(doc, "normalization"))
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ArtifactError(str(e), field="normalization")
    if norm.mean.keys() != norm.std.keys():
        raise ArtifactError("mean and std name different channels", field="normalization")
    for label, std in norm.std.items():
        if not (np.isfinite(norm.mean[label]) and np.isfinite(std) and std > 0):
            raise ArtifactError(f"invalid statistics for {label}", field="normalization")

    stored = _require(doc, "parameters")
    if not isinstance(stored, dict):
        raise ArtifactError(f"expected an object of named tensors, got {type(stored).__name__}",
                            field="parameters")
    shapes = expected_shapes(network)
    for name in sorted(stored.keys() - shapes.keys()):
        raise ArtifactError("tensor not used by the stored network config", field=name)
    tensors = {}
    for name, shape in shapes.items():
        if name not in stored:
            raise ArtifactError("missing tensor", field=name)
        tensors[name] = _tensor(name, stored[name], shape)

    created_at = _require(doc, "created_at")
    if not isinstance(created_at, str):
        raise ArtifactError(f"expected an ISO-8601 string, got {created_at!r}", field="created_at")
    protocol = doc.get("protocol", "in-run")
    if not isinstance(protocol, str):
        raise ArtifactError(f"expected a protocol name, got {protocol!r}", field="protocol")

    artifact = ModelArtifact(
        network=network,
        train=train,
        norm=norm,
        params=params_from_tensors(network, tensors),
        seed=_seed(doc),
        source_label=_label(doc, "source_label", norm),
        target_label=_label(doc, "target_label", norm),
        created_at=created_at,
        protocol=protocol,
        format_version=version,
    )
    logger.debug(f"Loaded model artifact {path}")
    return artifact
