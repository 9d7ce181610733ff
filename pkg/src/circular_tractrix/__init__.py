"""Circular tractrices and circular pseudospheres in R^3.

A circular tractrix is a space curve whose unit tangent segments end on a
circle of radius R in the plane x3 = 0.  The one-parameter family of such
curves sweeps a circular pseudosphere.  This package evaluates both in closed
form, checks their geometric invariants, integrates areas and volumes, and
cross-checks the curves against the bicycle rear-track ODE.
"""
from .frenet import FrenetData, frenet, is_planar, torsion_profile
from .pseudosphere import (
    SurfacePatch, cuspidal_edges, gauss_curvature, metric_analytic, metric_numeric,
    surface_point,
)
from .quadrature import arc_length, enclosed_volume, surface_area, unit_area_closed_form
from .rear_track import (
    Directrix, RearTrackState, circle_directrix, integrate, line_directrix, rear_track_ode,
    residual_of_closed_form,
)
from .tractrix import (
    PeriodData, Regime, TractrixParams, eval_curve, make_params, period_data, position,
    singular_parameters,
)
from .verify import run_suite

__all__ = [
    "Directrix", "FrenetData", "PeriodData", "RearTrackState", "Regime", "SurfacePatch",
    "TractrixParams", "arc_length", "circle_directrix", "cuspidal_edges", "enclosed_volume",
    "eval_curve", "frenet", "gauss_curvature", "integrate", "is_planar", "line_directrix",
    "make_params", "metric_analytic", "metric_numeric", "period_data", "position",
    "rear_track_ode", "residual_of_closed_form", "run_suite", "singular_parameters",
    "surface_area", "surface_point", "torsion_profile", "unit_area_closed_form",
]
