"""Exact perfect-matching coverage for cubic bridgeless graphs."""

from .graph import CubicGraph, ValidationReport, validate, find_bridges
from .matchings import Matching, MatchingList, enumerate_pms, is_perfect_matching

__all__ = [
    "CubicGraph",
    "ValidationReport",
    "validate",
    "find_bridges",
    "Matching",
    "MatchingList",
    "enumerate_pms",
    "is_perfect_matching",
]
