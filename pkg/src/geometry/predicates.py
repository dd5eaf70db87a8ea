"""Robust orientation and incircle predicates.

A double-precision evaluation is accepted whenever its magnitude clears the
static error bound; otherwise the determinant is recomputed exactly with
rational arithmetic. The returned signs are therefore exact for any finite
double input.

Points are any indexable pairs (tuples, numpy rows, Point2).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

PointLike = Sequence[float]

# half an ulp of 1.0
EPSILON = 2.0 ** -53
CCW_ERRBOUND_A = (3.0 + 16.0 * EPSILON) * EPSILON
ICC_ERRBOUND_A = (10.0 + 96.0 * EPSILON) * EPSILON


def _sign(v) -> int:
	return int(v > 0) - int(v < 0)


def orient2d_exact(pa: PointLike, pb: PointLike, pc: PointLike) -> Fraction:
	"""Exact value of det[[ax-cx, ay-cy], [bx-cx, by-cy]]."""
	ax, ay = Fraction(pa[0]), Fraction(pa[1])
	bx, by = Fraction(pb[0]), Fraction(pb[1])
	cx, cy = Fraction(pc[0]), Fraction(pc[1])
	return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def orient2d(pa: PointLike, pb: PointLike, pc: PointLike) -> int:
	"""Sign of the orientation of (pa, pb, pc): +1 counterclockwise, -1 clockwise, 0 collinear."""
	detleft = (pa[0] - pc[0]) * (pb[1] - pc[1])
	detright = (pa[1] - pc[1]) * (pb[0] - pc[0])
	det = detleft - detright

	if detleft > 0.0:
		if detright <= 0.0:
			return _sign(det)
		detsum = detleft + detright
	elif detleft < 0.0:
		if detright >= 0.0:
			return _sign(det)
		detsum = -detleft - detright
	else:
		return _sign(det)

	errbound = CCW_ERRBOUND_A * detsum
	if det >= errbound or -det >= errbound:
		return _sign(det)
	return _sign(orient2d_exact(pa, pb, pc))


def incircle_exact(pa: PointLike, pb: PointLike, pc: PointLike, pd: PointLike) -> Fraction:
	"""Exact lifted determinant; positive iff pd is inside the circle through ccw (pa, pb, pc)."""
	dx, dy = Fraction(pd[0]), Fraction(pd[1])
	adx, ady = Fraction(pa[0]) - dx, Fraction(pa[1]) - dy
	bdx, bdy = Fraction(pb[0]) - dx, Fraction(pb[1]) - dy
	cdx, cdy = Fraction(pc[0]) - dx, Fraction(pc[1]) - dy
	alift = adx * adx + ady * ady
	blift = bdx * bdx + bdy * bdy
	clift = cdx * cdx + cdy * cdy
	return (
		alift * (bdx * cdy - cdx * bdy)
		+ blift * (cdx * ady - adx * cdy)
		+ clift * (adx * bdy - bdx * ady)
	)


def incircle(pa: PointLike, pb: PointLike, pc: PointLike, pd: PointLike) -> int:
	"""Sign of the incircle test: +1 inside, -1 outside, 0 cocircular (pa, pb, pc counterclockwise)."""
	adx = pa[0] - pd[0]
	bdx = pb[0] - pd[0]
	cdx = pc[0] - pd[0]
	ady = pa[1] - pd[1]
	bdy = pb[1] - pd[1]
	cdy = pc[1] - pd[1]

	bdxcdy = bdx * cdy
	cdxbdy = cdx * bdy
	alift = adx * adx + ady * ady

	cdxady = cdx * ady
	adxcdy = adx * cdy
	blift = bdx * bdx + bdy * bdy

	adxbdy = adx * bdy
	bdxady = bdx * ady
	clift = cdx * cdx + cdy * cdy

	det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
	permanent = (
		(abs(bdxcdy) + abs(cdxbdy)) * alift
		+ (abs(cdxady) + abs(adxcdy)) * blift
		+ (abs(adxbdy) + abs(bdxady)) * clift
	)
	errbound = ICC_ERRBOUND_A * permanent
	if det > errbound or -det > errbound:
		return _sign(det)
	return _sign(incircle_exact(pa, pb, pc, pd))


def incircle_perturbed(
	pa: PointLike, pb: PointLike, pc: PointLike, pd: PointLike,
	ia: int, ib: int, ic: int, id_: int,
) -> int:
	"""Incircle sign that never returns 0 for four distinct sites.

	Each site i is lifted to |p|^2 + eps_i with eps_i infinitesimal and
	eps_i >> eps_j whenever i < j. On an exact tie the site with the smallest
	index whose orientation cofactor is nonzero decides the sign.
	"""
	s = incircle(pa, pb, pc, pd)
	if s != 0:
		return s
	# cofactors of the lifted coordinate in the 4x4 determinant
	terms = (
		(ia, orient2d(pb, pc, pd)),
		(ib, -orient2d(pa, pc, pd)),
		(ic, orient2d(pa, pb, pd)),
		(id_, -orient2d(pa, pb, pc)),
	)
	for _, cof in sorted(terms, key=lambda t: t[0]):
		if cof != 0:
			return cof
	return 0


__all__ = [
	"orient2d",
	"orient2d_exact",
	"incircle",
	"incircle_exact",
	"incircle_perturbed",
	"EPSILON",
]
