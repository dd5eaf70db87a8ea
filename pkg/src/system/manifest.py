from __future__ import annotations

import platform
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Mapping

from src import __version__
from src.common.utils import sha256_file

from .json import write_json
from .log import get_logger

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"


@dataclass
class RunManifest:
    """What a command read and wrote, stored next to its outputs.

    Everything except wall_seconds is a function of the inputs, so two runs
    with equal inputs and seed write equal manifests up to that field.
    """

    command: str
    config: dict[str, Any] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    version: str = __version__
    outputs: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0

    def add_input(self, path: str | Path) -> None:
        p = Path(path)
        self.inputs[p.name] = sha256_file(p)

    def add_output(self, path: str | Path) -> None:
        name = Path(path).name
        if name not in self.outputs:
            self.outputs.append(name)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["python"] = platform.python_version()
        return out

    def write(self, directory: str | Path) -> Path:
        path = Path(directory) / MANIFEST_NAME
        write_json(path, self.to_dict())
        logger.info("Manifest for %s written to %s", self.command, path)
        return path


def manifest_for(command: str, config: Mapping[str, Any], seed: int | None = None) -> RunManifest:
    return RunManifest(command=command, config=dict(config), seed=seed)


__all__ = ["MANIFEST_NAME", "RunManifest", "manifest_for"]
