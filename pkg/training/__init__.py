from training.backprop import batch_loss, bptt_gradients
from training.loss import mse_loss
from training.optimizer import Adam, AdamState, clip_global_norm, global_norm, optimizer_step
from training.trainer import EpochRecord, TrainConfig, TrainReport, train

__all__ = [
    "batch_loss", "bptt_gradients", "mse_loss",
    "Adam", "AdamState", "clip_global_norm", "global_norm", "optimizer_step",
    "EpochRecord", "TrainConfig", "TrainReport", "train",
]
