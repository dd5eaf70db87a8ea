"""Closed-form limits for relative density and domination number.

Relative density of the r-factor proportional-edge and tau central-similarity
digraphs with centroid center satisfies sqrt(n) (rho_n - mu) -> N(0, nu);
mu is the arc probability and nu = Cov[h12, h13]. These functions evaluate
the piecewise closed forms for mu and nu, the probability p_r behind the
domination-number limit, and the limit law itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import integrate, stats

from src.asymptotics.exceptions import InvalidParam
from src.common.config import get_config_value, load_config
from src.geometry.core import TOL, Point2, TriangleFrame, triangle_center
from src.geometry.proximity import t_r_corners, t_r_triangle
from src.system.log import get_logger

logger = get_logger(__name__)

# P(gamma = 2) at r = 3/2 with the centroid as center; computed externally
P_CENTROID_THREE_HALVES = 0.7413


def _check_r(r: float) -> float:
	r = float(r)
	if not math.isfinite(r) or r < 1.0:
		raise InvalidParam(f"r must be a finite number >= 1, got {r}")
	return r


def _check_tau(tau: float) -> float:
	tau = float(tau)
	if not 0.0 <= tau <= 1.0:
		raise InvalidParam(f"tau must lie in [0, 1], got {tau}")
	return tau


def mu_pe(r: float) -> float:
	"""Arc probability of the proportional-edge map with the centroid as center."""
	r = _check_r(r)
	if r < 1.5:
		return 37.0 / 216.0 * r * r
	if r < 2.0:
		return -r * r / 8.0 + 4.0 - 8.0 / r + 9.0 / (2.0 * r * r)
	return 1.0 - 3.0 / (2.0 * r * r)


def _nu1(r: float) -> float:
	return (
		3007 * r**10 - 13824 * r**9 + 898 * r**8 + 77760 * r**7 - 117953 * r**6
		+ 48888 * r**5 - 24246 * r**4 + 60480 * r**3 - 38880 * r**2 + 3888
	) / (58320 * r**4)


def _nu2(r: float) -> float:
	return (
		5467 * r**10 - 37800 * r**9 + 61912 * r**8 + 46588 * r**6 - 191520 * r**5
		+ 13608 * r**4 + 241920 * r**3 - 155520 * r**2 + 15552
	) / (233280 * r**4)


def _nu3(r: float) -> float:
	return -(
		7 * r**12 - 72 * r**11 + 312 * r**10 - 5332 * r**8 + 15072 * r**7 + 13704 * r**6
		- 139264 * r**5 + 273600 * r**4 - 242176 * r**3 + 103232 * r**2 - 27648 * r + 8640
	) / (960 * r**6)


def _nu4(r: float) -> float:
	return (15 * r**4 - 11 * r**2 - 48 * r + 25) / (15 * r**6)


NU_PE_BRANCHES = ((1.0, 4.0 / 3.0, _nu1), (4.0 / 3.0, 1.5, _nu2), (1.5, 2.0, _nu3), (2.0, math.inf, _nu4))


def nu_pe(r: float) -> float:
	"""Asymptotic variance Cov[h12, h13] for the proportional-edge map, centroid center."""
	r = _check_r(r)
	for lo, hi, f in NU_PE_BRANCHES:
		if lo <= r < hi:
			return float(f(r))
	raise AssertionError("unreachable")


def nu_pe_branch_gaps() -> dict[float, float]:
	"""|left branch - right branch| at each interior breakpoint of nu_pe."""
	gaps = {}
	for (_, hi, left), (lo, _, right) in zip(NU_PE_BRANCHES, NU_PE_BRANCHES[1:]):
		gaps[hi] = abs(float(left(hi)) - float(right(lo)))
	return gaps


def mu_cs(tau: float) -> float:
	tau = _check_tau(tau)
	return tau * tau / 6.0


def nu_cs(tau: float) -> float:
	tau = _check_tau(tau)
	num = tau**4 * (6 * tau**5 - 3 * tau**4 - 25 * tau**3 + tau**2 + 49 * tau + 14)
	return num / (45.0 * (tau + 1.0) * (2.0 * tau + 1.0) * (tau + 2.0))


def _p_r_integrand(t: float, s: float, rho: float) -> float:
	# u = s / (1 - s), v = t / (1 - t)
	if s >= 1.0 or t >= 1.0:
		return 0.0
	ds, dt = 1.0 - s, 1.0 - t
	u, v = s / ds, t / dt
	return u * v * math.exp(-(u * u + v * v + 2.0 * rho * u * v)) / (ds * ds * dt * dt)


def p_r(r: float, *, abs_tol: float | None = None) -> float:
	"""P(gamma = 2) in the Bernoulli branch of the domination-number limit, 1 <= r < 3/2.

	p_r = 4 * int_0^inf int_0^inf u v exp(-(u^2 + v^2 + 2 rho u v)) du dv with
	rho = r (r - 1), evaluated by adaptive quadrature on [0, 1)^2 after
	u = s / (1 - s).
	"""
	r = _check_r(r)
	if r >= 1.5:
		raise InvalidParam(f"p_r is defined for 1 <= r < 3/2, got r={r}")
	if r == 1.0:
		return 1.0
	if abs_tol is None:
		abs_tol = get_config_value(load_config(), "quadrature.abs_tol", 1e-6, minimum=1e-14)
	rho = r * (r - 1.0)
	val, err = integrate.dblquad(
		_p_r_integrand, 0.0, 1.0, 0.0, 1.0, args=(rho,), epsabs=abs_tol / 4.0, epsrel=1e-10
	)
	logger.debug("p_r(%.6g): integral=%.10g err=%.2e", r, 4.0 * val, 4.0 * err)
	return 4.0 * val


def p_r_closed_form(r: float) -> float:
	"""Closed form of the same integral, used to cross-check the quadrature."""
	r = _check_r(r)
	if r >= 1.5:
		raise InvalidParam(f"p_r is defined for 1 <= r < 3/2, got r={r}")
	rho = r * (r - 1.0)
	if rho == 0.0:
		return 1.0
	q = 1.0 - rho * rho
	return (1.0 - rho * (math.pi / 2.0 - math.asin(rho)) / math.sqrt(q)) / q


CenterCase = Literal["t_vertex", "interior", "other_in_Tr", "centroid"]
GammaKind = Literal["degenerate", "two_plus_bernoulli"]


@dataclass(frozen=True)
class GammaLimit:
	kind: GammaKind
	r: float
	center_case: CenterCase
	# degenerate value, or P(gamma = 2) for the Bernoulli branch
	value: float

	@property
	def mean(self) -> float:
		if self.kind == "degenerate":
			return self.value
		return 3.0 - self.value

	@property
	def variance(self) -> float:
		if self.kind == "degenerate":
			return 0.0
		return self.value * (1.0 - self.value)

	def pmf(self) -> dict[int, float]:
		if self.kind == "degenerate":
			return {int(self.value): 1.0}
		return {2: self.value, 3: 1.0 - self.value}


def gamma_limit(r: float, center_case: CenterCase) -> GammaLimit:
	"""Limit law of the domination number for proportional-edge digraphs in one triangle.

	  1 <= r < 3/2, M a corner of T_r            2 + Bernoulli, P(gamma = 2) = p_r
	  1 <= r < 3/2, M elsewhere in T_r           3
	  r = 3/2, M the centroid                    2 + Bernoulli, P(gamma = 2) = 0.7413
	  r > 3/2, M interior                        1
	"""
	r = _check_r(r)
	if r < 1.5:
		if center_case == "t_vertex":
			return GammaLimit("two_plus_bernoulli", r, center_case, p_r(r))
		if center_case == "other_in_Tr":
			return GammaLimit("degenerate", r, center_case, 3.0)
	elif r == 1.5:
		if center_case == "centroid":
			return GammaLimit("two_plus_bernoulli", r, center_case, P_CENTROID_THREE_HALVES)
	elif center_case in ("interior", "centroid"):
		return GammaLimit("degenerate", r, center_case, 1.0)
	raise InvalidParam(f"no limit law for r={r} with center case {center_case!r}")


def classify_center(frame: TriangleFrame, m: Point2, r: float, tol: float = TOL) -> CenterCase | None:
	"""Center case of M (basic coordinates) for gamma_limit, or None when no case applies."""
	r = _check_r(r)
	mv = np.array([m.x, m.y])
	interior = float(np.min(frame.edge_distances(mv))) > tol
	if r < 1.5:
		if any(m.dist(t) <= tol for t in t_r_corners(frame, r)):
			return "t_vertex"
		if t_r_triangle(frame, r).contains(mv, tol):
			return "other_in_Tr"
		return None
	if r == 1.5:
		return "centroid" if m.dist(triangle_center(frame, "CM")) <= tol else None
	return "interior" if interior else None


def density_z_score(rho: float, n: int, family: Literal["pe", "cs"], param: float) -> tuple[float, float]:
	"""(z, two-sided p-value) for sqrt(n) (rho - mu) / sqrt(nu) against the normal limit."""
	if n < 2:
		raise InvalidParam(f"n must be >= 2, got {n}")
	if family == "pe":
		mu, nu = mu_pe(param), nu_pe(param)
	elif family == "cs":
		mu, nu = mu_cs(param), nu_cs(param)
	else:
		raise InvalidParam(f"family must be 'pe' or 'cs', got {family!r}")
	if nu <= 0.0:
		raise InvalidParam(f"degenerate limit (nu = {nu}) for {family} at {param}")
	z = math.sqrt(n) * (rho - mu) / math.sqrt(nu)
	return z, float(2.0 * stats.norm.sf(abs(z)))


__all__ = [
	"P_CENTROID_THREE_HALVES",
	"GammaLimit",
	"mu_pe",
	"nu_pe",
	"nu_pe_branch_gaps",
	"mu_cs",
	"nu_cs",
	"p_r",
	"p_r_closed_form",
	"gamma_limit",
	"classify_center",
	"density_z_score",
]
