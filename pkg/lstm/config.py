from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List

from utils.errors import ShapeError

PEEPHOLE_MODES = ("full-matrix", "diagonal", "none")
OUTPUT_GATE_CELLS = ("previous", "current")
DENSE_ACTIVATION = "tanh"


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture of a (possibly stacked) peephole LSTM regressor.

    `output_gate_cell="previous"` feeds c_{t-1} to the output gate peephole;
    "current" feeds c_t.
    """
    lstm_hidden_sizes: List[int] = field(default_factory=lambda: [20])
    dense_hidden: int = 30
    window_size: int = 50
    peephole_mode: str = "full-matrix"
    output_gate_cell: str = "previous"
    input_size: int = 1
    dense_activation: str = DENSE_ACTIVATION

    def __post_init__(self):
        object.__setattr__(self, "lstm_hidden_sizes", [int(h) for h in self.lstm_hidden_sizes])
        if not self.lstm_hidden_sizes:
            raise ShapeError("lstm_hidden_sizes must name at least one layer")
        sizes = self.lstm_hidden_sizes + [self.dense_hidden, self.window_size, self.input_size]
        if any(s < 1 for s in sizes):
            raise ShapeError(f"all sizes must be >= 1, got {self}")
        if self.peephole_mode not in PEEPHOLE_MODES:
            raise ValueError(f"peephole_mode must be one of {PEEPHOLE_MODES}, got {self.peephole_mode!r}")
        if self.output_gate_cell not in OUTPUT_GATE_CELLS:
            raise ValueError(f"output_gate_cell must be one of {OUTPUT_GATE_CELLS}, got {self.output_gate_cell!r}")
        if self.dense_activation != DENSE_ACTIVATION:
            raise ValueError(f"dense_activation is fixed to {DENSE_ACTIVATION!r}")

    def layer_input_size(self, layer: int) -> int:
        return self.input_size if layer == 0 else self.lstm_hidden_sizes[layer - 1]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NetworkConfig":
        return cls(**data)
