"""Closed-form limits: relative density moments, the domination-number law and
Poisson-Delaunay triangle statistics."""

from src.asymptotics.exceptions import AsymptoticsError, InvalidParam, OutOfSupport
from src.asymptotics.limits import (
	GammaLimit,
	classify_center,
	density_z_score,
	gamma_limit,
	mu_cs,
	mu_pe,
	nu_cs,
	nu_pe,
	nu_pe_branch_gaps,
	p_r,
	p_r_closed_form,
)
from src.asymptotics.poisson_delaunay import (
	pd_angle_moment,
	pd_angle_pdf,
	pd_area_moment,
	pd_edge_length_pdf,
	pd_joint_angle_pdf,
	pd_max_angle_pdf,
	pd_min_angle_pdf,
	pd_obtuse_probability,
	pd_obtuse_probability_fresnel,
)

__all__ = [
	"AsymptoticsError",
	"InvalidParam",
	"OutOfSupport",
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
