"""Proximity catch digraphs: construction, relative density and domination."""

from src.pcd.digraph import (
	PcDigraph,
	UStatMoments,
	arcs_table,
	build,
	finite_sample_variance,
	relative_density,
	u_statistic_moments,
)
from src.pcd.domination import (
	domination_exact,
	domination_greedy,
	greedy_dominating_set,
	is_dominating,
	minimum_dominating_set,
)
from src.pcd.exceptions import DigraphError, EmptyX, InstanceTooLarge, InvariantViolation, TooFewVertices
from src.pcd.interval import IntervalFixture, build_interval_cccd

__all__ = [
	"PcDigraph",
	"UStatMoments",
	"IntervalFixture",
	"build",
	"build_interval_cccd",
	"relative_density",
	"arcs_table",
	"u_statistic_moments",
	"finite_sample_variance",
	"domination_exact",
	"domination_greedy",
	"minimum_dominating_set",
	"greedy_dominating_set",
	"is_dominating",
	"DigraphError",
	"EmptyX",
	"TooFewVertices",
	"InstanceTooLarge",
	"InvariantViolation",
]
