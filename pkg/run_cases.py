# run_cases.py

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import straincast
from experiments import PUBLISHED_RESULTS, PRESETS, get_preset
from utils.errors import StraincastError
from utils.io import load_json
from utils.logger import setup_logging

logger = logging.getLogger(__name__)


def run_case(name: str, workdir: Path, seed: int, epochs: Optional[int] = None,
             speed: Optional[float] = None) -> Dict:
    """
    Simulate, train, predict, evaluate and plot one preset through the CLI.

    Returns:
        dict: the "final" block of the training report plus output paths
    """
    preset = get_preset(name)
    case_dir = workdir / name
    case_dir.mkdir(parents=True, exist_ok=True)
    data = case_dir / "run.csv"
    model = case_dir / "model.json"
    report = case_dir / "model.report.json"
    predictions = case_dir / "predictions.csv"

    steps: List[List[str]] = [
        ["simulate", "--train", preset.train_kind, "--speed", str(speed or preset.speed_kmph),
         "--seed", str(seed), "--out", str(data)],
        ["train", "--preset", name, "--data", str(data), "--seed", str(seed),
         "--out", str(model), "--report", str(report)] + (["--epochs", str(epochs)] if epochs else []),
        ["predict", "--model", str(model), "--data", str(data), "--out", str(predictions)],
        ["evaluate", "--predictions", str(predictions), "--report", str(report)],
        ["report", "--predictions", str(predictions), "--title", preset.description],
    ]
    for argv in steps:
        logger.info(f"[{name}] straincast {' '.join(argv)}")
        code = straincast.main(argv)
        if code != 0:
            raise StraincastError(f"{name}: 'straincast {argv[0]}' exited with {code}")

    final = load_json(report)["final"]
    return {**final, "model": str(model), "predictions": str(predictions)}


def print_summary(results: Dict[str, Dict]) -> None:
    print("\nCase results (synthetic data) beside published field results:")
    print("-" * 72)
    print(f"{'case':<8}{'target':<8}{'RMSE':>10}{'acc %':>10}   {'pub RMSE':>10}{'pub acc %':>11}")
    for name, r in results.items():
        pub_rmse, pub_acc = PUBLISHED_RESULTS[name]
        print(f"{name:<8}{r['target']:<8}{r['rmse']:>10.3f}{r['accuracy_percent']:>10.2f}"
              f"   {pub_rmse:>10.3f}{pub_acc:>11.2f}")
    print("-" * 72)


def setup_argparse() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Run every experiment preset end to end",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s --workdir cases
  %(prog)s --cases case1 case4 --speed 50 --epochs 40
""",
    )
    parser.add_argument("--cases", nargs="+", choices=list(PRESETS), default=list(PRESETS),
                        help="Presets to run (default: all)")
    parser.add_argument("--workdir", default="cases", help="Directory for per-case outputs")
    parser.add_argument("--seed", type=int, default=0, help="Seed for simulation and training")
    parser.add_argument("--epochs", type=int, help="Override the epoch budget")
    parser.add_argument("--speed", type=float, help="Override every preset's crossing speed (kmph)")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = setup_argparse().parse_args(argv)
    setup_logging(args.debug)
    workdir = Path(args.workdir)
    results = {}
    try:
        for name in args.cases:
            results[name] = run_case(name, workdir, args.seed, args.epochs, args.speed)
    except StraincastError as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    print_summary(results)
    return 0


if __name__ == "__main__":
    sys.exit(main())
