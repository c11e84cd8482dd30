"""RunSeries and its CSV format.

    # dt=0.025
    # train=test
    # speed_kmph=50
    # source=synthetic
    time_s,loc1,loc2
    0.0,0.0,0.0
    ...

Comment lines start with '#'; `key=value` comments carry metadata. A leading
time column is optional and ignored on load (time is index * dt).
"""
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from utils.errors import DataError
from utils.io import atomic_write_text, read_text

logger = logging.getLogger(__name__)

TIME_LABELS = ("time", "time_s", "t", "time (s)")
TRAIN_TYPES = ("test", "passenger", "synthetic")


@dataclass
class RunMeta:
    train_type: Optional[str] = None
    speed_kmph: Optional[float] = None
    source: str = ""


@dataclass(eq=False)
class RunSeries:
    """One train crossing: equal-length strain channels (microstrain) at period dt."""
    dt: float
    channels: Dict[str, np.ndarray]
    meta: RunMeta = field(default_factory=RunMeta)

    def __post_init__(self):
        if not self.dt > 0:
            raise DataError(f"sampling period must be positive, got {self.dt}")
        self.channels = {label: np.asarray(v, dtype=np.float64) for label, v in self.channels.items()}
        lengths = {label: len(v) for label, v in self.channels.items()}
        if not lengths:
            raise DataError("run has no channels")
        if len(set(lengths.values())) != 1:
            raise DataError(f"channels have unequal lengths: {lengths}")
        if self.length < 2:
            raise DataError(f"run needs at least 2 samples, got {self.length}")

    @property
    def labels(self) -> List[str]:
        return list(self.channels)

    @property
    def length(self) -> int:
        return len(next(iter(self.channels.values())))

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.length) * self.dt

    def channel(self, label: str) -> np.ndarray:
        if label not in self.channels:
            raise DataError(f"channel {label!r} not found; available channels: {', '.join(self.labels)}")
        return self.channels[label]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunSeries):
            return NotImplemented
        return (self.dt == other.dt and self.meta == other.meta and self.labels == other.labels
                and all(np.array_equal(self.channels[k], other.channels[k]) for k in self.labels))


def _parse_comment(line: str, meta: Dict[str, str]) -> None:
    body = line.lstrip("#").strip()
    if "=" in body:
        key, value = body.split("=", 1)
        meta[key.strip()] = value.strip()


def _parse_number(cell: str, row: int, col: int) -> float:
    try:
        value = float(cell.strip())
    except ValueError:
        raise DataError(f"non-numeric value {cell!r} at (row, col) = ({row}, {col})")
    if not math.isfinite(value):
        raise DataError(f"non-finite value {cell!r} at (row, col) = ({row}, {col})")
    return value


def read_cells(text: str, path: Union[str, Path]) -> Tuple[List[str], pd.DataFrame]:
    """
    Split CSV text into a stripped header and the data rows as strings.

    '#' lines and blank lines are skipped. Short rows come back padded with
    missing cells; rows longer than the header raise DataError.
    """
    try:
        frame = pd.read_csv(io.StringIO(text), header=None, dtype=str, comment="#",
                            keep_default_na=False, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise DataError(f"{path} has no header row")
    except pd.errors.ParserError as e:
        raise DataError(f"{path}: ragged row: {e}")
    frame = frame.map(lambda cell: cell.strip() if isinstance(cell, str) else cell)
    header = ["" if pd.isna(label) else label for label in frame.iloc[0]]
    return header, frame.iloc[1:].reset_index(drop=True)


def cells_to_float(cells: pd.DataFrame, path: Union[str, Path]) -> np.ndarray:
    """
    Convert string cells to a float64 matrix.

    Raises:
        DataError: for the first (row-major) missing, non-numeric or non-finite
            cell, with 1-based (data row, file column) coordinates
    """
    if cells.empty:
        return np.empty(cells.shape)
    values = cells.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64, na_value=np.nan)
    bad = ~np.isfinite(values)
    if bad.any():
        r, c = (int(k) for k in np.argwhere(bad)[0])
        cell = cells.iat[r, c]
        where = f"(row, col) = ({r + 1}, {c + 1})"
        if pd.isna(cell) or cell == "":
            raise DataError(f"{path}: ragged row {r + 1}: missing value at {where}")
        _parse_number(cell, r + 1, c + 1)
        raise DataError(f"{path}: non-numeric value {cell!r} at {where}")
    return values


def load_csv(path: Union[str, Path], dt_override: Optional[float] = None) -> RunSeries:
    """
    Parse a strain CSV into a RunSeries.

    Args:
        path: CSV file (UTF-8, comma-separated, header row of channel labels)
        dt_override: Sampling period to use instead of the `# dt=` line

    Returns:
        RunSeries: channels in header order

    Raises:
        DataError: undecodable bytes, ragged rows, non-numeric cells, duplicate
            labels or missing dt, with 1-based (data row, file column) coordinates
    """
    text = read_text(path)
    meta: Dict[str, str] = {}
    for line in text.splitlines():
        if line.strip().startswith("#"):
            _parse_comment(line.strip(), meta)

    header, cells = read_cells(text, path)
    if any(not label for label in header):
        raise DataError(f"{path}: empty column label in header {header}")
    duplicated = [label for label in dict.fromkeys(header) if header.count(label) > 1]
    if duplicated:
        raise DataError(f"{path}: duplicate channel label {duplicated[0]!r}")

    has_time = header[0].lower() in TIME_LABELS
    first = 1 if has_time else 0
    labels = header[first:]
    if not labels:
        raise DataError(f"{path}: no strain channels in header")
    data = cells_to_float(cells, path)[:, first:]

    if dt_override is not None:
        dt = float(dt_override)
    elif "dt" in meta:
        dt = _parse_number(meta["dt"], 0, 0)
    else:
        raise DataError(f"{path}: missing '# dt=<seconds>' line and no dt override given")

    speed = meta.get("speed_kmph")
    run_meta = RunMeta(
        train_type=meta.get("train"),
        speed_kmph=float(speed) if speed else None,
        source=meta.get("source", ""),
    )
    run = RunSeries(dt=dt, channels={label: data[:, j] for j, label in enumerate(labels)}, meta=run_meta)
    logger.debug(f"Loaded {path}: {len(labels)} channels x {run.length} samples, dt={dt}")
    return run


def format_csv(run: RunSeries) -> str:
    out = io.StringIO()
    out.write(f"# dt={run.dt!r}\n")
    if run.meta.train_type:
        out.write(f"# train={run.meta.train_type}\n")
    if run.meta.speed_kmph is not None:
        out.write(f"# speed_kmph={run.meta.speed_kmph!r}\n")
    if run.meta.source:
        out.write(f"# source={run.meta.source}\n")
    frame = pd.DataFrame({"time_s": [round(n * run.dt, 9) for n in range(run.length)], **run.channels})
    frame.to_csv(out, index=False, lineterminator="\n")
    return out.getvalue()


def save_csv(run: RunSeries, path: Union[str, Path]) -> None:
    """Write `run` atomically in the format load_csv reads."""
    atomic_write_text(path, format_csv(run))
