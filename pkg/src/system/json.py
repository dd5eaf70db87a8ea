from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .log import get_logger

logger = get_logger(__name__)


def _default(obj: Any) -> Any:
    """numpy scalars and arrays, tuples from dataclasses, paths."""
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return _finite(float(obj))
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def _sanitize(obj: Any) -> Any:
    # plain floats never reach `default`, so nan/inf are rewritten up front
    if isinstance(obj, float):
        return _finite(obj)
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _finite(v: float) -> float | str | None:
    if math.isnan(v):
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def read_json(path: str | Path, default: Optional[Any] = None) -> Any:
    """Read JSON file from `path` and return the parsed object.

    A missing file returns `default`; a parse error is logged and also
    returns `default`. Callers that must tell the two apart use `load_json`.
    """
    p = Path(path)
    if not p.exists():
        logger.debug("read_json: file does not exist: %s", p)
        return default
    try:
        with p.open('r', encoding='utf-8') as f:
            return json.load(f)
    except Exception as e:
        logger.exception("Failed to read/parse JSON from %s: %s", p, e)
        return default


def load_json(path: str | Path) -> Any:
    """Strict read: raises FileNotFoundError or json.JSONDecodeError."""
    with Path(path).open('r', encoding='utf-8') as f:
        return json.load(f)


def write_json(path: str | Path, data: Any, *, indent: int = 2, ensure_ascii: bool = False) -> None:
    """Write `data` as JSON to `path` with sorted keys, so equal data gives equal bytes.

    Creates parent directories as needed. On error this function logs the
    exception and re-raises it so callers can decide how to proceed.
    """
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    try:
        with p.open('w', encoding='utf-8') as f:
            f.write(safe_dumps(data, indent=indent, ensure_ascii=ensure_ascii))
            f.write("\n")
        logger.info("Wrote JSON to %s", p)
    except Exception as e:
        logger.exception("Failed to write JSON to %s: %s", p, e)
        raise


def safe_loads(s: str, default: Optional[Any] = None) -> Any:
    """Safely parse a JSON string and return the object or `default` on error."""
    try:
        return json.loads(s)
    except Exception as e:
        logger.debug("safe_loads parse error: %s", e)
        return default


def safe_dumps(obj: Any, *, indent: int = 2, ensure_ascii: bool = False) -> str:
    """Return a JSON string for `obj`. Raises on serialization errors."""
    return json.dumps(_sanitize(obj), indent=indent, ensure_ascii=ensure_ascii, sort_keys=True, default=_default, allow_nan=False)
