"""Site and triangle CSV files.

A site file holds one ``x,y`` pair per row; ``#`` starts a comment and a
single non-numeric first row is taken as a header.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from src.delaunay.exceptions import SiteFileError
from src.delaunay.triangulation import Triangulation
from src.system.log import get_logger

logger = get_logger(__name__)


def read_sites(path: str | Path) -> np.ndarray:
	"""Read an (m, 2) float array from a CSV point file."""
	p = Path(path)
	if not p.exists():
		raise SiteFileError(f"site file not found: {p}")
	try:
		df = pd.read_csv(p, comment="#", header=None, skipinitialspace=True, skip_blank_lines=True, dtype=str)
	except pd.errors.EmptyDataError:
		raise SiteFileError(f"site file is empty: {p}") from None
	except Exception as e:
		logger.exception("Failed to read site file %s", p)
		raise SiteFileError(f"cannot parse {p}: {e}") from e

	if df.shape[1] != 2:
		raise SiteFileError(f"{p}: expected 2 columns (x,y), found {df.shape[1]}")
	num = df.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
	bad = num.isna().any(axis=1)
	if bad.iloc[0] and not bad.iloc[1:].any():
		num = num.iloc[1:]
		bad = bad.iloc[1:]
	if bad.any():
		row = int(np.flatnonzero(bad.to_numpy())[0])
		raise SiteFileError(f"{p}: row {row + 1} is not a numeric x,y pair: {df.iloc[row].tolist()}")
	arr = num.to_numpy(dtype=float)
	if not np.all(np.isfinite(arr)):
		raise SiteFileError(f"{p}: non-finite coordinate")
	logger.info("read_sites: %d points from %s", len(arr), p)
	return arr


def write_sites(path: str | Path, pts: np.ndarray) -> Path:
	p = Path(path)
	p.parent.mkdir(parents=True, exist_ok=True)
	pd.DataFrame(np.asarray(pts, dtype=float).reshape(-1, 2), columns=["x", "y"]).to_csv(
		p, index=False, float_format="%.17g"
	)
	return p


def triangles_frame(t: Triangulation) -> pd.DataFrame:
	"""One row per triangle: vertex indices, neighbors and area."""
	rows = []
	for k, (tri, nb) in enumerate(zip(t.triangles, t.adjacency)):
		rows.append({
			"triangle": k,
			"i": tri[0], "j": tri[1], "k": tri[2],
			"nb_i": nb[0], "nb_j": nb[1], "nb_k": nb[2],
			"area": t.area(k),
		})
	return pd.DataFrame(rows, columns=["triangle", "i", "j", "k", "nb_i", "nb_j", "nb_k", "area"])


def write_triangles(path: str | Path, t: Triangulation) -> Path:
	p = Path(path)
	p.parent.mkdir(parents=True, exist_ok=True)
	triangles_frame(t).to_csv(p, index=False, float_format="%.17g")
	logger.info("Wrote %d triangles to %s", t.n_triangles, p)
	return p


__all__ = ["read_sites", "write_sites", "triangles_frame", "write_triangles"]
