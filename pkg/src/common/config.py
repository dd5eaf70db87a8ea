"""
Configuration access: load/save the library defaults in src/config.json and
read typed values by dotted key with range checks.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Mapping

from src.system.json import read_json, write_json
from src.system.log import get_logger

logger = get_logger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[1] / "config.json"


@lru_cache(maxsize=8)
def _load_cached(path: str) -> Mapping[str, Any]:
    data = read_json(path, default=None)
    if data is None:
        logger.warning("Config file missing or unreadable, using built-in defaults: %s", path)
        return {}
    return data


def load_config(path: str | Path | None = None) -> Mapping[str, Any]:
    """
    Load configuration from a JSON file and return it as a dict.
    - path: config file path; defaults to src/config.json
    """
    p = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    return _load_cached(str(p))


def save_config(cfg: Mapping[str, Any], path: str | Path) -> None:
    """
    Write the configuration back to a JSON file.
    """
    write_json(path, dict(cfg))
    _load_cached.cache_clear()


def get_config_value(
    cfg: Mapping[str, Any],
    key: str,
    default: Any = None,
    *,
    minimum: float | None = None,
    maximum: float | None = None,
) -> Any:
    """
    Read `a.b.c` style keys from the config. The value is coerced to the type
    of `default` when one is given; out-of-range or malformed values fall back
    to `default` with a warning.
    """
    node: Any = cfg
    for part in key.split("."):
        if not isinstance(node, Mapping) or part not in node:
            return default
        node = node[part]

    value = node
    if default is not None and not isinstance(value, type(default)):
        try:
            value = type(default)(value)
        except (TypeError, ValueError):
            logger.warning("Config value %s=%r has wrong type, using %r", key, node, default)
            return default
    if minimum is not None and value < minimum:
        logger.warning("Config value %s=%r below minimum %r, using %r", key, value, minimum, default)
        return default
    if maximum is not None and value > maximum:
        logger.warning("Config value %s=%r above maximum %r, using %r", key, value, maximum, default)
        return default
    return value


__all__ = ["load_config", "save_config", "get_config_value", "DEFAULT_CONFIG_PATH"]
