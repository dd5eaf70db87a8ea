"""
Main entry for the application.
Defines the CLI / startup flow entrypoint.
"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Sequence

# When executed directly (python src/main.py), make sure project root is importable
if __package__ in (None, ""):
    sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.system.log import get_logger  # noqa: E402
from src.system.startup import ensure_workspace_dirs  # noqa: E402

logger = get_logger(__name__)


def main(args: Sequence[str] | None = None) -> int:
    """
    Application main entry point.
    - with arguments: run one command (triangulate / pcd / limits / pr / simulate)
    - without: start the interactive loop
    Returns an exit code (int).
    """
    from src.system.CLI import main as cli_main

    ensure_workspace_dirs()
    return cli_main(list(args) if args is not None else None)


if __name__ == "__main__":
    raise SystemExit(main())
