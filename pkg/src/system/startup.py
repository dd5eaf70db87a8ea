from __future__ import annotations

from datetime import datetime
from pathlib import Path
from typing import Iterable

from .log import get_logger

logger = get_logger(__name__)

REQUIRED_DIRS = ("tasks", "data", "logs", "result")


def project_root() -> Path:
    return Path(__file__).resolve().parents[2]


def ensure_workspace_dirs(root: Path | None = None, extra_dirs: Iterable[str] | None = None) -> None:
    """Create the workspace folders (tasks, data, logs, result) under the project root.

    - root: project root path; if None, inferred from this file's location.
    - extra_dirs: additional folder names to ensure.
    """
    root = root or project_root()
    dirs = list(REQUIRED_DIRS)
    if extra_dirs:
        dirs.extend(extra_dirs)
    for name in dirs:
        p = root / name
        try:
            p.mkdir(parents=True, exist_ok=True)
            logger.debug("Workspace check: ensured directory %s", p)
        except OSError as e:
            logger.exception("Failed to ensure directory %s: %s", p, e)


def new_result_run_dir(root: Path | None = None) -> Path:
    """Create result/YYYYMMDD_HH_MM and return it.

    A second run in the same minute gets a _2, _3, ... suffix instead of
    writing into the first run's folder.
    """
    result_root = (root or project_root()) / "result"
    result_root.mkdir(parents=True, exist_ok=True)
    ts = datetime.now().strftime("%Y%m%d_%H_%M")
    run_dir = result_root / ts
    n = 1
    while True:
        try:
            run_dir.mkdir(parents=False, exist_ok=False)
            break
        except FileExistsError:
            n += 1
            run_dir = result_root / f"{ts}_{n}"
    logger.info("Result run directory created: %s", run_dir)
    return run_dir


__all__ = ["REQUIRED_DIRS", "project_root", "ensure_workspace_dirs", "new_result_run_dir"]
