"""Numerical toolkit for the ranges of entire harmonic maps in the plane.

Public surface: expression parsing and harmonic components, circle-arc
arithmetic, circle maxima and Fourier profiles, range sampling and
asymptotic-direction estimation, Lewis discs and rescaled maps, zero-set
tracing, and theorem-instance checkers.
"""

import os as _os

# cap BLAS worker pools before numpy spins them up
_threads = _os.environ.get("HARMONIC_RANGE_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

from .arcs import ArcSet, circle_distance
from .catalog import CatalogEntry, entry_names, get_entry, load_catalog
from .circles import (CircleMax, FourierProfile, circle_max, circle_values,
                      fourier_profile, harnack_bound_check, lemma_abs_check,
                      multiplicity)
from .expressions import (HarmonicComponent, HarmonicMap, ParseError,
                          parse_expr, parse_map)
from .lewis import (LewisDisc, Rect, RescaledMap, find_zero,
                    lewis_disc_search, rescaled_range_check, rescaled_sequence)
from .ranges import (Cone, DirectionEstimate, PhiProfile, RangeSample,
                     antipodal_gap_alpha, antipodal_pairs,
                     cone_avoidance_normalize, estimate_directions,
                     i_alpha_arcs, i_alpha_fit, phi_profile,
                     phi_sublinearity_check, sample_range)
from .reports import TheoremVerdict
from .theorems import (check_antipodal_theorem, check_cor_alpha,
                       check_halfplane_theorem, check_lewis_region,
                       check_log2_inequalities, check_murdoch_kuran,
                       log2_sample_points)
from .zeros import (DependenceReport, TractReport, ZeroCurve, cleaning_check,
                    detect_dependence, local_structure, trace_zero_set,
                    tract_report)

__version__ = "0.1.0"

__all__ = [
    "ArcSet", "circle_distance",
    "CatalogEntry", "entry_names", "get_entry", "load_catalog",
    "CircleMax", "FourierProfile", "circle_max", "circle_values",
    "fourier_profile", "harnack_bound_check", "lemma_abs_check",
    "multiplicity",
    "HarmonicComponent", "HarmonicMap", "ParseError",
    "parse_expr", "parse_map",
    "LewisDisc", "Rect", "RescaledMap", "find_zero",
    "lewis_disc_search", "rescaled_range_check", "rescaled_sequence",
    "Cone", "DirectionEstimate", "PhiProfile", "RangeSample",
    "antipodal_gap_alpha", "antipodal_pairs", "cone_avoidance_normalize",
    "estimate_directions", "i_alpha_arcs", "i_alpha_fit", "phi_profile",
    "phi_sublinearity_check", "sample_range",
    "TheoremVerdict",
    "check_antipodal_theorem", "check_cor_alpha", "check_halfplane_theorem",
    "check_lewis_region", "check_log2_inequalities", "check_murdoch_kuran",
    "log2_sample_points",
    "DependenceReport", "TractReport", "ZeroCurve", "cleaning_check",
    "detect_dependence", "local_structure", "trace_zero_set", "tract_report",
    "__version__",
]
