# straincast.py

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dataset import save_csv
from evaluation import evaluate, read_predictions, write_channel_plot, write_predictions, write_report
from experiments import DEFAULT_SPLIT, PROTOCOLS, PRESETS, get_preset, predict_run, train_model
from lstm import NetworkConfig, OUTPUT_GATE_CELLS, PEEPHOLE_MODES
from model_store import load as load_artifact, save as save_artifact
from simulation import TRAIN_KINDS, SimConfig, default_members, preset_train, simulate_run
from training import TrainConfig
from utils.cache import cached_run
from utils.config import creation_timestamp, load_config
from utils.errors import DataError, StraincastError, UsageError
from utils.io import load_json, save_json
from utils.logger import log_event, setup_logging

logger = logging.getLogger(__name__)


class StraincastArgumentParser(argparse.ArgumentParser):
    """argparse parser whose errors become UsageError (exit code 1)."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def positive_float(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not a number")
    if not number > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return number


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return number


def seed_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if not 0 <= number < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {value}")
    return number


def print_channel_summary(run) -> None:
    print(f"\nChannels ({run.length} samples, dt={run.dt} s):")
    print("-" * 60)
    for label in run.labels:
        values = run.channels[label]
        print(f"• {label}: length={len(values)}, min={values.min():.3f}, max={values.max():.3f}")
    print("-" * 60)


def cmd_simulate(args) -> int:
    """Write a synthetic crossing CSV."""
    overrides = dict(args.config["sim"])
    for name in ("span", "dt", "noise_sigma", "noise_fraction"):
        if getattr(args, name) is not None:
            overrides[name] = getattr(args, name)
    try:
        cfg = SimConfig(speed_kmph=args.speed, seed=args.seed, **overrides)
    except TypeError as e:
        raise UsageError(f"bad sim config override: {e}")
    run = simulate_run(preset_train(args.train), default_members(), cfg)
    save_csv(run, args.out)
    log_event("simulate", f"{args.train} train at {args.speed} kmph -> {args.out}")
    print_channel_summary(run)
    return 0


def _network_from_args(args) -> NetworkConfig:
    if args.preset:
        network = get_preset(args.preset).network
    else:
        network = NetworkConfig()
    changes = {}
    if args.hidden:
        changes["lstm_hidden_sizes"] = args.hidden
    if args.dense:
        changes["dense_hidden"] = args.dense
    if args.window:
        changes["window_size"] = args.window
    if args.peephole:
        changes["peephole_mode"] = args.peephole
    if args.output_gate_cell:
        changes["output_gate_cell"] = args.output_gate_cell
    return dataclasses.replace(network, **changes) if changes else network


def _train_config_from_args(args) -> TrainConfig:
    values = dict(args.config["train"])
    flags = {
        "learning_rate": args.lr, "epochs": args.epochs, "batch_size": args.batch_size,
        "clip_norm": args.clip_norm, "early_stop_patience": args.patience,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    values["seed"] = args.seed
    try:
        return TrainConfig(**values)
    except TypeError as e:
        raise UsageError(f"bad train config override: {e}")


def cmd_train(args) -> int:
    """Train one model and write its artifact and report."""
    if args.preset:
        preset = get_preset(args.preset)
        source = args.source or preset.source
        target = args.target or preset.target
    else:
        if not (args.source and args.target):
            raise UsageError("train needs --preset or both --source and --target")
        source, target = args.source, args.target

    network = _network_from_args(args)
    tcfg = _train_config_from_args(args)
    run = cached_run(args.data, args.dt)
    run.channel(source)
    run.channel(target)

    artifact, report, result = train_model(
        run, network, tcfg, source, target,
        created_at=creation_timestamp(now=args.timestamp == "now"),
        protocol=args.protocol, split_ratio=args.split_ratio,
    )
    save_artifact(artifact, args.out)
    report_path = args.report or str(Path(args.out).with_suffix(".report.json"))
    save_json(report_path, report.to_dict(include_timing=False))
    log_event("train", f"{source} -> {target}: {args.out}, report {report_path}")
    print(result.summary())
    return 0


def cmd_predict(args) -> int:
    """Predict the artifact's target channel over a CSV."""
    artifact = load_artifact(args.model)
    run = cached_run(args.data, args.dt)
    table = predict_run(artifact, run)
    write_predictions(table, args.out)
    log_event("predict", f"{len(table)} rows -> {args.out}")
    print(f"Wrote {len(table)} predictions of {artifact.target_label} to {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    """Print RMSE and accuracy; optionally append them to a report."""
    if args.predictions:
        table = read_predictions(args.predictions)
        origin = args.predictions
    elif args.model and args.data:
        table = predict_run(load_artifact(args.model), cached_run(args.data, args.dt))
        origin = args.data
    else:
        raise UsageError("evaluate needs --predictions, or --model together with --data")
    if not table.has_target:
        raise DataError(f"{origin} has no target column to evaluate against")

    result = evaluate(table.predicted, table.target)
    print(result.summary())

    if args.report:
        report = load_json(args.report) if Path(args.report).exists() else {}
        report.setdefault("evaluations", []).append({"input": str(origin), **result.to_dict()})
        save_json(args.report, report)
    log_event("evaluate", result.summary())
    return 0


def cmd_report(args) -> int:
    """Render target vs predicted as SVG plus the plotted data as CSV, or plot a run's channels."""
    if args.run:
        run = cached_run(args.run, args.dt)
        svg_path = args.svg or f"{Path(args.run).with_suffix('')}.svg"
        write_channel_plot(run, svg_path, title=args.title or "Measured strain time histories")
        log_event("report", f"{len(run.labels)} channels -> {svg_path}")
        print(f"Wrote {svg_path}")
        return 0

    table = read_predictions(args.predictions)
    if len(table) == 0:
        raise DataError(f"{args.predictions} contains no predictions")
    stem = Path(args.predictions).with_suffix("")
    svg_path = args.svg or f"{stem}.svg"
    csv_path = args.csv or f"{stem}.plot.csv"
    write_report(table, svg_path, csv_path, title=args.title or "Target and predicted strain time history")
    log_event("report", f"{svg_path}, {csv_path}")
    print(f"Wrote {svg_path} and {csv_path}")
    return 0


def setup_argparse(config: dict) -> argparse.ArgumentParser:
    """Set up command line argument parsing."""
    parser = StraincastArgumentParser(
        prog="straincast",
        description="Predict strain in one bridge member from strain measured in another.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s simulate --train test --speed 50 --seed 1 --out run.csv
  %(prog)s train --preset case1 --data run.csv --seed 7 --out m.json
  %(prog)s predict --model m.json --data run.csv --out pred.csv
  %(prog)s evaluate --predictions pred.csv --report m.report.json
  %(prog)s report --predictions pred.csv
  %(prog)s report --run run.csv

Environment Variables:
  STRAINCAST_SEED       Default seed for simulate/train
  STRAINCAST_CONFIG     JSON file with "train" / "sim" default overrides
  STRAINCAST_LOG_LEVEL  Logging level (default INFO)
  SOURCE_DATE_EPOCH     Fixed artifact creation timestamp

Exit codes: 0 success, 1 usage, 2 data error, 3 numeric divergence.
""",
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sim = sub.add_parser("simulate", help="Write a synthetic train-crossing strain CSV")
    sim.add_argument("--train", choices=TRAIN_KINDS, default="test", help="Train preset")
    sim.add_argument("--speed", type=positive_float, required=True, help="Speed in kmph")
    sim.add_argument("--seed", type=seed_int, default=config["seed"], help="Noise seed")
    sim.add_argument("--out", required=True, help="Output CSV path")
    sim.add_argument("--span", type=positive_float, help="Span length in m (default 45.72)")
    sim.add_argument("--dt", type=positive_float, help="Sampling period in s (default 0.025)")
    sim.add_argument("--noise-sigma", type=float, help="Noise std in microstrain for every channel")
    sim.add_argument("--noise-fraction", type=float, help="Noise std as a fraction of each channel's peak (default 0.02)")
    sim.set_defaults(func=cmd_simulate)

    tr = sub.add_parser("train", help="Train a model on a strain CSV")
    tr.add_argument("--preset", choices=list(PRESETS), help="Named experiment preset")
    tr.add_argument("--data", required=True, help="Input strain CSV")
    tr.add_argument("--out", required=True, help="Model artifact path (JSON)")
    tr.add_argument("--report", help="Training report path (default <out>.report.json)")
    tr.add_argument("--source", help="Input channel label")
    tr.add_argument("--target", help="Target channel label")
    tr.add_argument("--hidden", type=positive_int, nargs="+", help="LSTM hidden sizes, one per layer")
    tr.add_argument("--dense", type=positive_int, help="Dense hidden layer size")
    tr.add_argument("--window", type=positive_int, help="Window size T")
    tr.add_argument("--peephole", choices=PEEPHOLE_MODES, help="Peephole weight mode")
    tr.add_argument("--output-gate-cell", choices=OUTPUT_GATE_CELLS, help="Cell state read by the output gate")
    tr.add_argument("--protocol", choices=PROTOCOLS, default="in-run", help="Evaluation protocol")
    tr.add_argument("--split-ratio", type=float, default=DEFAULT_SPLIT, help="Holdout training fraction")
    tr.add_argument("--seed", type=seed_int, default=config["seed"], help="Training seed")
    tr.add_argument("--epochs", type=positive_int, help="Epoch budget (default 200)")
    tr.add_argument("--lr", type=positive_float, help="Learning rate (default 1e-3)")
    tr.add_argument("--batch-size", type=positive_int, help="Minibatch size (default 32)")
    tr.add_argument("--clip-norm", type=positive_float, help="Global gradient norm limit (default 5)")
    tr.add_argument("--patience", type=positive_int, help="Early-stop patience in epochs (default 20)")
    tr.add_argument("--dt", type=positive_float, help="Override the CSV sampling period")
    tr.add_argument("--timestamp", choices=("fixed", "now"), default="fixed",
                    help="Artifact timestamp: fixed (reproducible) or wall clock")
    tr.set_defaults(func=cmd_train)

    pr = sub.add_parser("predict", help="Predict the target channel with a trained model")
    pr.add_argument("--model", required=True, help="Model artifact")
    pr.add_argument("--data", required=True, help="Strain CSV with the source channel")
    pr.add_argument("--out", required=True, help="Predictions CSV path")
    pr.add_argument("--dt", type=positive_float, help="Override the CSV sampling period")
    pr.set_defaults(func=cmd_predict)

    ev = sub.add_parser("evaluate", help="Print RMSE and accuracy of predictions")
    ev.add_argument("--predictions", help="Predictions CSV with a target column")
    ev.add_argument("--model", help="Model artifact (with --data)")
    ev.add_argument("--data", help="Strain CSV (with --model)")
    ev.add_argument("--report", help="Report JSON to append the result to")
    ev.add_argument("--dt", type=positive_float, help="Override the CSV sampling period")
    ev.set_defaults(func=cmd_evaluate)

    rp = sub.add_parser("report", help="Plot target vs predicted strain (SVG + CSV), or a run's channels")
    source = rp.add_mutually_exclusive_group(required=True)
    source.add_argument("--predictions", help="Predictions CSV with a target column")
    source.add_argument("--run", help="Strain CSV whose channels to plot (SVG only)")
    rp.add_argument("--svg", help="SVG output path (default <predictions>.svg)")
    rp.add_argument("--csv", help="Plot data CSV path (default <predictions>.plot.csv)")
    rp.add_argument("--title", help="Chart title")
    rp.add_argument("--dt", type=positive_float, help="Override the CSV sampling period (with --run)")
    rp.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = load_config()
        parser = setup_argparse(config)
        args = parser.parse_args(argv)
        args.config = config
        setup_logging(args.debug)
        return args.func(args)
    except StraincastError as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # invalid combinations of otherwise well-formed flags
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return UsageError.exit_code


if __name__ == "__main__":
    sys.exit(main())
