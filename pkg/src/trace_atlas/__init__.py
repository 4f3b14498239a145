"""Siegel-family polynomials, coefficient limit curves and trace-bound inequalities."""

from .exactpoly import IntPoly, binomial, count_roots_in, is_totally_positive, parse_poly, serialize_poly
from .siegel import absolute_trace, normalized_points, siegel_poly, siegel_poly_closed_form, siegel_poly_constructive
from .curves import area_between, coverage_ratio, limit_curve_L, lower_curve_ell, solve_theta
from .bounds import improved_newton_check, verify_theorem2

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "absolute_trace",
    "area_between",
    "binomial",
    "count_roots_in",
    "coverage_ratio",
    "improved_newton_check",
    "is_totally_positive",
    "limit_curve_L",
    "lower_curve_ell",
    "normalized_points",
    "parse_poly",
    "serialize_poly",
    "siegel_poly",
    "siegel_poly_closed_form",
    "siegel_poly_constructive",
    "solve_theta",
    "verify_theorem2",
]
