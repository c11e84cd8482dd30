"""Prediction tables: index,time_s,predicted_microstrain[,target_microstrain]."""
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from dataset.csv_io import cells_to_float, read_cells
from utils.errors import DataError
from utils.io import atomic_write_text, read_text

logger = logging.getLogger(__name__)

COLUMNS = ("index", "time_s", "predicted_microstrain", "target_microstrain")


@dataclass
class PredictionTable:
    index: np.ndarray
    time_s: np.ndarray
    predicted: np.ndarray
    target: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.predicted)

    @property
    def has_target(self) -> bool:
        return self.target is not None

    def to_frame(self) -> pd.DataFrame:
        columns = [np.asarray(self.index, dtype=int), self.time_s, self.predicted]
        if self.has_target:
            columns.append(self.target)
        return pd.DataFrame(dict(zip(COLUMNS, columns)))


def format_predictions(table: PredictionTable) -> str:
    out = io.StringIO()
    table.to_frame().to_csv(out, index=False, lineterminator="\n")
    return out.getvalue()


def write_predictions(table: PredictionTable, path: Union[str, Path]) -> None:
    atomic_write_text(path, format_predictions(table))
    logger.info(f"Wrote {len(table)} predictions to {path}")


def read_predictions(path: Union[str, Path]) -> PredictionTable:
    header, cells = read_cells(read_text(path), path)
    missing = [c for c in COLUMNS[:3] if c not in header]
    if missing:
        raise DataError(f"{path} lacks column(s) {', '.join(missing)}; found {', '.join(header)}")
    values = cells_to_float(cells, path)
    column = {name: values[:, j] for j, name in enumerate(header)}
    return PredictionTable(
        index=column["index"].astype(int),
        time_s=column["time_s"],
        predicted=column["predicted_microstrain"],
        target=column.get(COLUMNS[3]),
    )
