from dataset.csv_io import RunMeta, RunSeries, format_csv, load_csv, save_csv
from dataset.normalize import NormStats, fit_normalizer
from dataset.windows import WindowedDataset, make_windows, split_chronological, windows_from_runs

__all__ = [
    "RunMeta", "RunSeries", "format_csv", "load_csv", "save_csv",
    "NormStats", "fit_normalizer",
    "WindowedDataset", "make_windows", "split_chronological", "windows_from_runs",
]
