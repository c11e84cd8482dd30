import json
import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

from utils.errors import UsageError

logger = logging.getLogger(__name__)

CONFIG_ENV = "STRAINCAST_CONFIG"
SEED_ENV = "STRAINCAST_SEED"


def load_config() -> Dict[str, Any]:
    """Load configuration from .env, environment variables and an optional JSON file.

    Returns:
        dict: {"seed": int, "train": {...overrides}, "sim": {...overrides}}
    """
    load_dotenv()

    config: Dict[str, Any] = {"seed": 0, "train": {}, "sim": {}}

    seed = os.getenv(SEED_ENV)
    if seed:
        try:
            config["seed"] = int(seed)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {seed!r}")

    config_path = os.getenv(CONFIG_ENV)
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise UsageError(f"{CONFIG_ENV} points to missing file {path}")
        try:
            with open(path, encoding="utf-8") as f:
                file_config = json.load(f)
        except json.JSONDecodeError as e:
            raise UsageError(f"Error loading config file {path}: {e}")
        for section in ("train", "sim"):
            config[section].update(file_config.get(section, {}))
        logger.debug(f"Loaded config overrides from {path}")

    return config


def creation_timestamp(now: bool = False) -> str:
    """ISO-8601 UTC timestamp for artifacts.

    SOURCE_DATE_EPOCH wins, then wall clock if `now`, else the Unix epoch.
    """
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    if epoch:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    elif now:
        moment = datetime.now(tz=timezone.utc).replace(microsecond=0)
    else:
        moment = datetime.fromtimestamp(0, tz=timezone.utc)
    return moment.isoformat()
