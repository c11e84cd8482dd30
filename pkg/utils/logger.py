import logging
import os
import sys

logger = logging.getLogger("straincast")

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(debug: bool = False) -> None:
    """Configure root logging for an entry script.

    Args:
        debug (bool): Force DEBUG level. Otherwise STRAINCAST_LOG_LEVEL or INFO.
    """
    if debug:
        level = logging.DEBUG
    else:
        level = getattr(logging, os.getenv("STRAINCAST_LOG_LEVEL", "INFO").upper(), logging.INFO)

    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def log_event(event, detail=""):
    logger.info(f"[{event}] {detail}")
