"""PNG figures for triangulations, digraphs and limit curves.

Functions:
	- plot_pcd(t, x_points, g, output): Delaunay cells of Y, X points and the arcs of g
	- plot_triangulation(t, output): the cells alone, with the hull outlined
	- plot_limit_curves(df, output): mu / nu / p_r columns of a limits table against the parameter

Figures are written to a file and closed; nothing is shown interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from matplotlib.collections import LineCollection

from src.delaunay.triangulation import Triangulation
from src.pcd.digraph import PcDigraph
from src.system.log import get_logger
from src.system.startup import new_result_run_dir

logger = get_logger(__name__)


def _output_path(output: str | Path | None, default_name: str) -> Path:
	if output:
		return Path(output)
	return new_result_run_dir() / default_name


def _save(fig, path: Path) -> Path:
	try:
		path.parent.mkdir(parents=True, exist_ok=True)
		fig.savefig(path, dpi=120, bbox_inches='tight')
		logger.info('Saved plot to %s', path)
	except Exception as e:
		logger.exception('Failed saving plot: %s', e)
		raise
	finally:
		plt.close(fig)
	return path


def _draw_cells(ax, t: Triangulation) -> None:
	tri = np.asarray(t.triangles, dtype=int)
	edges = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
	segs = t.sites[edges]
	ax.add_collection(LineCollection(segs, colors='gray', linewidths=0.8, alpha=0.7))
	hull = t.sites[list(t.hull) + [t.hull[0]]]
	ax.plot(hull[:, 0], hull[:, 1], color='black', linewidth=1.2)
	ax.scatter(t.sites[:, 0], t.sites[:, 1], s=18, color='tab:red', zorder=3, label='Y')


def plot_triangulation(t: Triangulation, output: str | Path | None = None) -> Path:
	fig, ax = plt.subplots(figsize=(7, 7))
	_draw_cells(ax, t)
	ax.set_title(f'Delaunay triangulation ({t.n_sites} sites, {t.n_triangles} cells)')
	ax.set_aspect('equal')
	ax.autoscale_view()
	return _save(fig, _output_path(output, 'triangulation.png'))


def plot_pcd(
	t: Triangulation,
	x_points: np.ndarray,
	g: PcDigraph,
	output: str | Path | None = None,
	dominating: list[int] | None = None,
) -> Path:
	"""X points with arcs drawn as arrows; excluded points hollow, a dominating set highlighted."""
	xs = np.asarray(x_points, dtype=float).reshape(-1, 2)
	fig, ax = plt.subplots(figsize=(7, 7))
	_draw_cells(ax, t)
	kept = xs[list(g.x_index)]
	for i, j in g.arcs():
		a, b = kept[i], kept[j]
		ax.annotate('', xy=b, xytext=a, arrowprops={'arrowstyle': '->', 'color': 'tab:blue', 'lw': 0.6, 'alpha': 0.6})
	ax.scatter(kept[:, 0], kept[:, 1], s=14, color='tab:blue', zorder=4, label='X')
	if g.excluded:
		out = xs[list(g.excluded)]
		ax.scatter(out[:, 0], out[:, 1], s=14, facecolors='none', edgecolors='tab:blue', zorder=4, label='X outside hull')
	if dominating:
		d = kept[dominating]
		ax.scatter(d[:, 0], d[:, 1], s=60, marker='s', facecolors='none', edgecolors='tab:green', linewidths=1.5, zorder=5, label='dominating set')
	ax.set_title(f'{g.spec_label}: n={g.n}, arcs={g.n_arcs}')
	ax.set_aspect('equal')
	ax.autoscale_view()
	ax.legend(loc='upper left', fontsize=8)
	return _save(fig, _output_path(output, 'pcd.png'))


def plot_limit_curves(df: pd.DataFrame, output: str | Path | None = None) -> Path:
	"""One panel per value column (mu, nu, p_r) of a limits table keyed by its first column."""
	if df is None or df.empty:
		raise ValueError('Empty DataFrame provided to plot_limit_curves')
	param = df.columns[0]
	cols = [c for c in ('mu', 'nu', 'p_r') if c in df.columns]
	if not cols:
		raise ValueError(f'No mu/nu/p_r columns to plot in {list(df.columns)}')
	fig, axes = plt.subplots(len(cols), 1, sharex=True, figsize=(8, 3 * len(cols)), constrained_layout=True)
	axes = np.atleast_1d(axes)
	for ax, c in zip(axes, cols):
		ax.plot(df[param], df[c], marker='o', markersize=3, linewidth=1.2)
		ax.set_ylabel(c)
		ax.grid(True, alpha=0.3)
	axes[-1].set_xlabel(param)
	return _save(fig, _output_path(output, 'limits.png'))


__all__ = ['plot_pcd', 'plot_triangulation', 'plot_limit_curves']
