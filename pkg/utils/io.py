import json
import os
import tempfile
from pathlib import Path
from typing import Any, Union

from utils.errors import DataError

PathLike = Union[str, Path]


def atomic_write_text(path: PathLike, text: str) -> None:
    """Write text to a temp file beside `path`, then rename it into place."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def dumps_json(data: Any) -> str:
    # sorted keys and repr-exact floats keep repeated dumps byte-identical
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_json(path: PathLike) -> Any:
    if not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def save_json(path: PathLike, data: Any) -> None:
    atomic_write_text(path, dumps_json(data))


def read_text(path: PathLike) -> str:
    """Read a UTF-8 file (optional BOM); missing files and undecodable bytes raise DataError."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"{path} not found")
    try:
        return path.read_bytes().decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise DataError(f"{path}: not valid UTF-8 at byte offset {e.start}") from e
