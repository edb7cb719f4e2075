"""Exact constructions on S-Urysohn spaces, their isometry groups and group actions."""

from .distance_set import DistanceSet, MembershipError, q, fmt
from .metric_core import (FiniteMetricSpace, KatetovFunction, PartialIsometry,
                          check_metric, is_katetov, katetov_extend, minimal_support,
                          amalgam, ext_distance, check_partial_isometry)
from .tower import TowerSpace, IsometryAgent, extend_isometry, homogeneity_certificate

__version__ = "0.1.0"

__all__ = ["DistanceSet", "MembershipError", "q", "fmt", "FiniteMetricSpace", "KatetovFunction",
           "PartialIsometry", "check_metric", "is_katetov", "katetov_extend", "minimal_support",
           "amalgam", "ext_distance", "check_partial_isometry", "TowerSpace", "IsometryAgent",
           "extend_isometry", "homogeneity_certificate"]
