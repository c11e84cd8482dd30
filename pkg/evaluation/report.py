"""Strain history charts as standalone SVG, plus the plotted data as CSV.

Charts are drawn with matplotlib. Each plotted series is then rewritten from
an SVG <path> into a <polyline> so downstream tools can pick series out by
element type. A fixed hash salt and no Date metadata keep the output
byte-identical for identical input.
"""
import io
import logging
import re
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from dataset.csv_io import RunSeries  # noqa: E402
from evaluation.predictions import PredictionTable  # noqa: E402
from utils.errors import DataError  # noqa: E402
from utils.io import atomic_write_text  # noqa: E402

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
NAMESPACES = {
    "": SVG_NS,
    "xlink": "http://www.w3.org/1999/xlink",
    "dc": "http://purl.org/dc/elements/1.1/",
    "cc": "http://creativecommons.org/ns#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
}
for _prefix, _uri in NAMESPACES.items():
    ET.register_namespace(_prefix, _uri)

SVG_RC = {"svg.hashsalt": "straincast", "svg.fonttype": "none"}
FIGSIZE = (10, 5)
TIME_LABEL = "time (s)"
STRAIN_LABEL = "strain (microstrain)"
DEFAULT_TITLE = "Target and predicted strain time history"
TARGET_COLOR = "#1f77b4"
PREDICTED_COLOR = "#d62728"

_TOKEN = re.compile(r"[A-Za-z]|[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


def _path_points(d: str) -> str:
    """Vertices of an SVG path made of M/L commands, as polyline points."""
    tokens = _TOKEN.findall(d)
    commands = {t for t in tokens if t.isalpha()}
    if not commands <= {"M", "L"}:
        raise ValueError(f"series path uses commands {sorted(commands)}; only M and L can become a polyline")
    numbers = [t for t in tokens if not t.isalpha()]
    return " ".join(f"{x},{y}" for x, y in zip(numbers[::2], numbers[1::2]))


def _as_polylines(svg: bytes, series_ids: Sequence[str]) -> str:
    root = ET.fromstring(svg)
    for gid in series_ids:
        group = root.find(f".//{{{SVG_NS}}}g[@id='{gid}']")
        path = group.find(f"{{{SVG_NS}}}path") if group is not None else None
        if path is None:
            raise ValueError(f"series {gid!r} was not drawn")
        path.tag = f"{{{SVG_NS}}}polyline"
        path.set("points", _path_points(path.attrib.pop("d")))
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _render(series: List[Tuple[str, np.ndarray, np.ndarray, str]], title: str) -> str:
    """Line chart of (label, x, y, color) series; returns the SVG text."""
    ids = [f"series-{k}" for k in range(len(series))]
    with matplotlib.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=FIGSIZE)
        try:
            for gid, (label, x, y, color) in zip(ids, series):
                line, = ax.plot(x, y, label=label, color=color, linewidth=1.2)
                line.set_gid(gid)
            ax.set_xlabel(TIME_LABEL)
            ax.set_ylabel(STRAIN_LABEL)
            ax.set_title(title)
            ax.grid(True, alpha=0.3)
            ax.legend(loc="upper right")
            fig.tight_layout()
            buf = io.BytesIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return _as_polylines(buf.getvalue(), ids)


def render_svg(table: PredictionTable, title: str = DEFAULT_TITLE) -> str:
    """Target and predicted series over time; deterministic for a given table."""
    if len(table) == 0:
        raise DataError("no predictions to plot")
    if not table.has_target:
        raise DataError("prediction table has no target column to compare against")
    return _render([
        ("Target", table.time_s, table.target, TARGET_COLOR),
        ("Predicted", table.time_s, table.predicted, PREDICTED_COLOR),
    ], title)


def render_channels_svg(run: RunSeries, title: str = "Measured strain time histories") -> str:
    """Every channel of a run over time, one polyline per channel."""
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    return _render([(label, run.times, run.channels[label], colors[k % len(colors)])
                    for k, label in enumerate(run.labels)], title)


def format_report_csv(table: PredictionTable) -> str:
    out = io.StringIO()
    frame = table.to_frame()
    frame = frame[["index", "time_s", "target_microstrain", "predicted_microstrain"]]
    frame.to_csv(out, index=False, lineterminator="\n")
    return out.getvalue()


def write_report(table: PredictionTable, svg_path: Union[str, Path], csv_path: Union[str, Path],
                 title: str = DEFAULT_TITLE) -> None:
    svg = render_svg(table, title)
    atomic_write_text(svg_path, svg)
    atomic_write_text(csv_path, format_report_csv(table))
    logger.info(f"Wrote report {svg_path} and {csv_path} ({len(table)} points)")


def write_channel_plot(run: RunSeries, svg_path: Union[str, Path],
                       title: str = "Measured strain time histories") -> None:
    atomic_write_text(svg_path, render_channels_svg(run, title))
    logger.info(f"Wrote channel plot {svg_path} ({len(run.labels)} channels x {run.length} samples)")
