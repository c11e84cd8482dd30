from experiments.pipeline import DEFAULT_SPLIT, PROTOCOLS, PreparedData, predict_dataset, predict_run, prepare_data, train_model
from experiments.presets import PUBLISHED_RESULTS, PRESETS, SOURCE_CHANNEL, ExperimentPreset, get_preset

__all__ = [
    "DEFAULT_SPLIT", "PROTOCOLS", "PreparedData", "predict_dataset", "predict_run", "prepare_data", "train_model",
    "PUBLISHED_RESULTS", "PRESETS", "SOURCE_CHANNEL", "ExperimentPreset", "get_preset",
]
