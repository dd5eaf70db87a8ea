"""Shape statistics of the typical triangle of a planar Poisson-Delaunay tessellation.

All pdfs accept scalars or numpy arrays and return 0 outside their support.
Intensity is lam (points per unit area).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from src.asymptotics.exceptions import OutOfSupport
from src.common.config import get_config_value, load_config
from src.system.log import get_logger

logger = get_logger(__name__)

ArrayLike = float | np.ndarray


def _arg(x: ArrayLike) -> np.ndarray:
	arr = np.asarray(x, dtype=float)
	if not np.all(np.isfinite(arr)):
		raise OutOfSupport(f"pdf argument must be finite, got {x!r}")
	return arr


def _out(arr: np.ndarray, x: ArrayLike) -> ArrayLike:
	return float(arr) if np.ndim(x) == 0 else arr


def _check_lam(lam: float) -> float:
	lam = float(lam)
	if not (math.isfinite(lam) and lam > 0.0):
		raise OutOfSupport(f"intensity must be > 0, got {lam}")
	return lam


def pd_joint_angle_pdf(x: ArrayLike, y: ArrayLike) -> ArrayLike:
	"""Joint density of two angles of the typical triangle: (8/3pi) sin x sin y sin(x + y)."""
	a, b = np.broadcast_arrays(_arg(x), _arg(y))
	inside = (a > 0) & (b > 0) & (a + b < math.pi)
	val = np.where(inside, 8.0 / (3.0 * math.pi) * np.sin(a) * np.sin(b) * np.sin(a + b), 0.0)
	return float(val) if np.ndim(x) == 0 and np.ndim(y) == 0 else val


def pd_angle_pdf(x: ArrayLike) -> ArrayLike:
	"""Marginal density of one angle on (0, pi)."""
	a = _arg(x)
	val = 4.0 / (3.0 * math.pi) * ((math.pi - a) * np.cos(a) + np.sin(a)) * np.sin(a)
	return _out(np.where((a > 0) & (a < math.pi), val, 0.0), x)


def pd_min_angle_pdf(x: ArrayLike) -> ArrayLike:
	"""Density of the smallest angle on (0, pi/3)."""
	a = _arg(x)
	val = 2.0 / math.pi * ((math.pi - 3.0 * a) * np.sin(2.0 * a) + np.cos(2.0 * a) - np.cos(4.0 * a))
	return _out(np.where((a > 0) & (a < math.pi / 3.0), val, 0.0), x)


def pd_max_angle_pdf(x: ArrayLike) -> ArrayLike:
	"""Density of the largest angle on (pi/3, pi), two branches split at pi/2."""
	a = _arg(x)
	s2, c2, c4 = np.sin(2.0 * a), np.cos(2.0 * a), np.cos(4.0 * a)
	acute = 2.0 / math.pi * (3.0 * a * s2 - c2 + c4 - math.pi * s2)
	sa, ca = np.sin(a), np.cos(a)
	obtuse = (4.0 * math.pi * ca * sa + 3.0 * sa * sa - ca * ca - 4.0 * a * ca * sa + 1.0) / math.pi
	val = np.where(a < math.pi / 2.0, acute, obtuse)
	return _out(np.where((a > math.pi / 3.0) & (a < math.pi), val, 0.0), x)


def pd_edge_length_pdf(x: ArrayLike, lam: float = 1.0) -> ArrayLike:
	"""Density of the length of a typical Delaunay edge."""
	lam = _check_lam(lam)
	a = _arg(x)
	sl = math.sqrt(lam)
	val = math.pi * lam * a / 3.0 * (
		sl * a * np.exp(-math.pi * lam * a * a / 4.0) + special.erfc(math.sqrt(math.pi * lam) * a / 2.0)
	)
	return _out(np.where(a > 0, val, 0.0), x)


def pd_area_moment(k: int, lam: float = 1.0) -> float:
	"""E[A^k] for the area A of the typical triangle."""
	lam = _check_lam(lam)
	if int(k) != k or k < 1:
		raise OutOfSupport(f"moment order must be a positive integer, got {k}")
	k = int(k)
	log_num = special.gammaln((3 * k + 5) / 2.0) + special.gammaln(k / 2.0 + 1.0)
	log_den = (
		math.log(3.0) + 2.0 * special.gammaln((k + 3) / 2.0) + k * math.log(2.0)
		+ (k - 0.5) * math.log(math.pi) + k * math.log(lam)
	)
	return float(math.exp(log_num - log_den))


def _quad_tol() -> float:
	return get_config_value(load_config(), "quadrature.abs_tol", 1e-6, minimum=1e-14)


def pd_angle_moment(k: int) -> float:
	"""E[X^k] for one angle X of the typical triangle."""
	if int(k) != k or k < 0:
		raise OutOfSupport(f"moment order must be a nonnegative integer, got {k}")
	val, _ = integrate.quad(lambda a: a**k * pd_angle_pdf(a), 0.0, math.pi, epsabs=_quad_tol() / 10.0)
	return float(val)


def pd_obtuse_probability() -> float:
	"""P(largest angle > pi/2): the max-angle density integrated over (pi/2, pi)."""
	val, err = integrate.quad(pd_max_angle_pdf, math.pi / 2.0, math.pi, epsabs=1e-9, epsrel=1e-9)
	logger.debug("pd_obtuse_probability: %.10f (err %.1e)", val, err)
	return float(val)


def pd_obtuse_probability_fresnel() -> float:
	"""The Fresnel-integral expression for the same probability, read with sin(x^2) and cos(x^2).

	Under that reading the obtuse-branch integral reduces to
	(1/pi) int_{pi/2}^{pi} (3 sin(x^2) - cos(x^2)) dx, which is about 0.03726
	and disagrees with the direct integral; kept for comparison only.
	"""
	s_hi, c_hi = special.fresnel(math.sqrt(2.0 * math.pi))
	s_lo, c_lo = special.fresnel(math.sqrt(math.pi / 2.0))
	return float((3.0 * (s_hi - s_lo) - (c_hi - c_lo)) / math.sqrt(2.0 * math.pi))


__all__ = [
	"pd_joint_angle_pdf",
	"pd_angle_pdf",
	"pd_min_angle_pdf",
	"pd_max_angle_pdf",
	"pd_edge_length_pdf",
	"pd_area_moment",
	"pd_angle_moment",
	"pd_obtuse_probability",
	"pd_obtuse_probability_fresnel",
]
