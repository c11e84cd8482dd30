from evaluation.metrics import EvalResult, accuracy_percent, evaluate, rmse
from evaluation.predictions import PredictionTable, format_predictions, read_predictions, write_predictions
from evaluation.report import format_report_csv, render_channels_svg, render_svg, write_channel_plot, write_report

__all__ = [
    "EvalResult", "accuracy_percent", "evaluate", "rmse",
    "PredictionTable", "format_predictions", "read_predictions", "write_predictions",
    "format_report_csv", "render_channels_svg", "render_svg", "write_channel_plot", "write_report",
]
