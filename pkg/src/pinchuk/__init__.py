"""Exact verification of Pinchuk's non-injective polynomial map with nowhere-zero Jacobian.

The map F = (p, q) : R^2 -> R^2 has jac(F) > 0 everywhere yet is not
injective.  Everything here runs in exact rational arithmetic.
"""

from .fibers import (ClassifyResult, FiberReport, Kind, OnCurveError, classify,
                     complex_fiber_count, curve, discriminant_at, on_curve, phi,
                     real_fiber, side_of_curve, zariski_extra_point)
from .parsing import PolySyntaxError, parse_poly
from .polynomial import MultiPoly
from .roots import count_real_roots, isolate_real_roots, refine, sturm_sequence
from .system import (A1, A2, G, apply_F, build_system, jacobian_grid_check, psi,
                     verify_identities)
from .univariate import UniPoly

__all__ = [
    "A1", "A2", "ClassifyResult", "FiberReport", "G", "Kind", "MultiPoly", "OnCurveError",
    "PolySyntaxError", "UniPoly", "apply_F", "build_system", "classify",
    "complex_fiber_count", "count_real_roots", "curve", "discriminant_at",
    "isolate_real_roots", "jacobian_grid_check", "on_curve", "parse_poly", "phi", "psi",
    "real_fiber", "refine", "side_of_curve", "sturm_sequence", "verify_identities",
    "zariski_extra_point",
]
