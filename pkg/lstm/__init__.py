from lstm.cell import CellState, StepTrace, cell_step, peephole
from lstm.config import NetworkConfig, OUTPUT_GATE_CELLS, PEEPHOLE_MODES
from lstm.network import ForwardTrace, forward_batch, forward_sequences, forward_window, predict_windows
from lstm.params import (
    DenseParams,
    GradientSet,
    LstmLayerParams,
    NetworkParams,
    expected_shapes,
    init_network,
    params_from_tensors,
    validate_params,
)

__all__ = [
    "CellState", "StepTrace", "cell_step", "peephole",
    "NetworkConfig", "OUTPUT_GATE_CELLS", "PEEPHOLE_MODES",
    "ForwardTrace", "forward_batch", "forward_sequences", "forward_window", "predict_windows",
    "DenseParams", "GradientSet", "LstmLayerParams", "NetworkParams", "expected_shapes", "init_network", "params_from_tensors", "validate_params",
]
