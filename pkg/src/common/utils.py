"""
Small shared helpers: directory creation, file digests, index chunking.
"""
from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Iterator


def ensure_dir(path: str | Path) -> Path:
    """Create the directory (and parents) if missing and return it as a Path."""
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def sha256_file(path: str | Path, block_size: int = 1 << 16) -> str:
    """Hex SHA-256 digest of a file's bytes."""
    h = hashlib.sha256()
    with Path(path).open("rb") as f:
        for block in iter(lambda: f.read(block_size), b""):
            h.update(block)
    return h.hexdigest()


def chunk_ranges(n: int, size: int) -> Iterator[tuple[int, int]]:
    """Yield (start, stop) pairs covering range(n) in blocks of `size`."""
    size = max(1, int(size))
    for start in range(0, n, size):
        yield start, min(n, start + size)


__all__ = ["ensure_dir", "sha256_file", "chunk_ranges"]
