import logging
import os
from typing import Callable, Any, Optional, Tuple

from cachetools import LRUCache

from utils.errors import DataError

logger = logging.getLogger(__name__)

# Parsed runs keyed by file identity; a rewritten file gets a new key
_cache = LRUCache(maxsize=32)


def _file_key(path: str, extra: Any) -> Tuple:
    stat = os.stat(path)
    return (os.path.realpath(path), stat.st_mtime_ns, stat.st_size, extra)


def get_cached_content(path: str, fetch_func: Callable[[], Any], extra: Any = None) -> Any:
    """
    Get parsed file content from cache or load it using the provided function.

    Args:
        path (str): File the content was parsed from
        fetch_func (Callable): Function that parses the file on a cache miss
        extra (Any): Additional key material (e.g. parse options)

    Returns:
        Any: Cached or freshly parsed content
    """
    cache_key = _file_key(path, extra)

    if cache_key in _cache:
        logger.debug(f"Cache hit for {path}")
        return _cache[cache_key]

    content = fetch_func()
    _cache[cache_key] = content
    return content


def cached_run(path: str, dt_override: Optional[float] = None):
    """Load a RunSeries CSV once per file version."""
    from dataset.csv_io import load_csv
    if not os.path.exists(path):
        raise DataError(f"{path} not found")
    return get_cached_content(path, lambda: load_csv(path, dt_override=dt_override), extra=dt_override)


def clear_cache() -> None:
    _cache.clear()
