import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from dataset import NormStats, RunSeries, WindowedDataset, fit_normalizer, make_windows, split_chronological
from evaluation import EvalResult, PredictionTable, evaluate
from lstm import NetworkConfig, predict_windows
from model_store import ModelArtifact
from training import TrainConfig, TrainReport, train
from utils.errors import DataError

logger = logging.getLogger(__name__)

PROTOCOLS = ("in-run", "holdout")
DEFAULT_SPLIT = 0.8


@dataclass
class PreparedData:
    norm: NormStats
    train_set: WindowedDataset
    val_set: WindowedDataset
    eval_set: WindowedDataset


def prepare_data(run: RunSeries, source: str, target: str, T: int,
                 protocol: str = "in-run", split_ratio: float = DEFAULT_SPLIT) -> PreparedData:
    """
    Normalise and window one run.

    in-run: statistics over the whole series; train, validate and evaluate on every window.
    holdout: statistics over the samples the training windows touch; the first
    ceil(ratio * n) windows train, the rest validate and are evaluated.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"protocol must be one of {PROTOCOLS}, got {protocol!r}")
    src, tgt = run.channel(source), run.channel(target)
    if T > run.length:
        raise DataError(f"window size {T} is longer than the series ({run.length} samples)")

    if protocol == "in-run":
        norm = fit_normalizer(run, dict.fromkeys((source, target)))
        full = make_windows(norm.normalize(src, source), norm.normalize(tgt, target), T, source, target)
        return PreparedData(norm=norm, train_set=full, val_set=full, eval_set=full)

    # windows are split on raw data first so the statistics see only the training prefix
    raw = make_windows(src, tgt, T, source, target)
    train_raw, _ = split_chronological(raw, split_ratio)
    norm = fit_normalizer(run, dict.fromkeys((source, target)), prefix=len(train_raw) + T - 1)
    full = make_windows(norm.normalize(src, source), norm.normalize(tgt, target), T, source, target)
    train_set, val_set = split_chronological(full, split_ratio)
    return PreparedData(norm=norm, train_set=train_set, val_set=val_set, eval_set=val_set)


def predict_dataset(artifact: ModelArtifact, ds: WindowedDataset) -> np.ndarray:
    """Denormalised (microstrain) predictions for normalised windows."""
    preds = predict_windows(artifact.params, ds.windows, artifact.network)
    return artifact.norm.denormalize(preds, artifact.target_label)


def train_model(run: RunSeries, network: NetworkConfig, tcfg: TrainConfig, source: str, target: str,
                created_at: str, protocol: str = "in-run", split_ratio: float = DEFAULT_SPLIT,
                show_progress: Optional[bool] = None) -> Tuple[ModelArtifact, TrainReport, EvalResult]:
    """Run dataset -> training -> evaluation for one source/target pair."""
    data = prepare_data(run, source, target, network.window_size, protocol, split_ratio)
    params, report = train(network, tcfg, data.train_set, data.val_set, show_progress=show_progress)
    artifact = ModelArtifact(
        network=network, train=tcfg, norm=data.norm, params=params, seed=tcfg.seed,
        source_label=source, target_label=target, created_at=created_at, protocol=protocol,
    )
    truth = run.channel(target)[data.eval_set.end_index]
    result = evaluate(predict_dataset(artifact, data.eval_set), truth)
    report.final = {"protocol": protocol, "source": source, "target": target, **result.to_dict()}
    logger.info(f"{source} -> {target} ({protocol}): {result.summary()}")
    return artifact, report, result


def predict_run(artifact: ModelArtifact, run: RunSeries) -> PredictionTable:
    """Predict the target channel for every window of `run`; includes the measured
    target when the run carries that channel."""
    T = artifact.network.window_size
    src = run.channel(artifact.source_label)
    if T > run.length:
        raise DataError(f"window size {T} is longer than the series ({run.length} samples)")
    has_target = artifact.target_label in run.channels
    tgt = run.channels[artifact.target_label] if has_target else np.zeros(run.length)
    ds = make_windows(artifact.norm.normalize(src, artifact.source_label), tgt, T,
                      artifact.source_label, artifact.target_label)
    return PredictionTable(
        index=ds.end_index,
        time_s=ds.end_index * run.dt,
        predicted=predict_dataset(artifact, ds),
        target=ds.targets if has_target else None,
    )
