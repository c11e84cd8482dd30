from dataclasses import dataclass
from typing import List, Sequence, Tuple

# (length over buffers m, axle positions from the front buffer m, axle load kN)
VehicleLayout = Tuple[float, Sequence[float], float]

ENGINE_AXLES = (1.9, 3.9, 5.9, 13.1, 15.1, 17.1)
WAGON_AXLES = (1.3, 3.3, 7.4, 9.4)
COACH_AXLES = (2.3, 4.9, 17.4, 20.0)

TEST_TRAIN: List[VehicleLayout] = [(19.0, ENGINE_AXLES, 196.0)] + [(10.7, WAGON_AXLES, 199.0)] * 4
PASSENGER_TRAIN: List[VehicleLayout] = [(19.0, ENGINE_AXLES, 220.0)] + [(22.3, COACH_AXLES, 110.0)] * 5

TRAIN_KINDS = ("test", "passenger")


@dataclass(frozen=True)
class TrainSpec:
    """Axles as (offset behind the first axle in m, load in kN)."""
    name: str
    axles: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if not self.axles:
            raise ValueError("train needs at least one axle")
        offsets = [a[0] for a in self.axles]
        if offsets[0] != 0.0:
            raise ValueError(f"first axle offset must be 0, got {offsets[0]}")
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("axle offsets must be strictly increasing")
        if any(load <= 0 for _, load in self.axles):
            raise ValueError("axle loads must be positive")

    @property
    def length(self) -> float:
        """Distance from first to last axle."""
        return self.axles[-1][0]

    @property
    def offsets(self) -> List[float]:
        return [a[0] for a in self.axles]

    @property
    def loads(self) -> List[float]:
        return [a[1] for a in self.axles]


def compose_train(name: str, vehicles: Sequence[VehicleLayout]) -> TrainSpec:
    positions = []
    front = 0.0
    for length, axles, load in vehicles:
        positions.extend((front + x, load) for x in axles)
        front += length
    first = positions[0][0]
    return TrainSpec(name=name, axles=tuple((round(x - first, 6), load) for x, load in positions))


def preset_train(kind: str) -> TrainSpec:
    """`test`: engine and loaded wagons with near-uniform axle loads.
    `passenger`: engine axles twice as heavy as the coach axles."""
    if kind == "test":
        return compose_train("test", TEST_TRAIN)
    if kind == "passenger":
        return compose_train("passenger", PASSENGER_TRAIN)
    raise ValueError(f"train kind must be one of {TRAIN_KINDS}, got {kind!r}")
