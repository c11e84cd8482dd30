from simulation.influence import CHORD, DIAGONAL, MemberModel, default_members, influence_ordinate
from simulation.simulator import (
    BRIDGE_SPAN_M,
    SAMPLE_PERIOD_S,
    SimConfig,
    clean_signal,
    sample_count,
    simulate_run,
)
from simulation.trains import TRAIN_KINDS, TrainSpec, compose_train, preset_train

__all__ = [
    "CHORD", "DIAGONAL", "MemberModel", "default_members", "influence_ordinate",
    "BRIDGE_SPAN_M", "SAMPLE_PERIOD_S", "SimConfig", "clean_signal", "sample_count", "simulate_run",
    "TRAIN_KINDS", "TrainSpec", "compose_train", "preset_train",
]
