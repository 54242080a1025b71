"""Bisectors, linear families of bisectors and equidistant loci in the
complex hyperbolic plane, plus zero divisors of three-dimensional algebras."""

from .algebra_isotopy import (Algebra3, det_cubic, is_generic, multiplication_kernel,
                              normal_form_verify, phi_of, phi_projectivity_test)
from .bisector import (BisectorMap, Geodesic, Kind, bisector_from_points,
                       bisector_from_spine, bisector_matrix, contains, meridian_through,
                       parabolic_normal_basis, real_spine, slice_through)
from .cubics import CubicType, TernaryCubic, analyze_cubic, classify_cubic
from .equitant_loci import (EquitantFamily, base_biquadratic, classify_equitant, cubic_EW,
                            equitant_instance, focal_curve, irreducibility_report,
                            make_equitant, realness_witness, recover_family, trace_base)
from .errors import EquilociError, ToleranceFailure, ValidationError
from .hermitian_core import (J, distance, inner, normalize, point_signature,
                             projective_distance, projectively_equal)
from .linear_families import (FamilyClass, LinearFamily, classify_family, family_through,
                              giraud_pencil, subspace_distance, transversal_at)

__version__ = "0.1.0"

__all__ = [
    "Algebra3", "BisectorMap", "CubicType", "EquilociError", "EquitantFamily",
    "FamilyClass", "Geodesic", "J", "Kind", "LinearFamily", "TernaryCubic",
    "ToleranceFailure", "ValidationError", "analyze_cubic", "base_biquadratic",
    "bisector_from_points", "bisector_from_spine", "bisector_matrix", "classify_cubic",
    "classify_equitant", "classify_family", "contains", "cubic_EW", "det_cubic",
    "distance", "equitant_instance", "family_through", "focal_curve", "giraud_pencil",
    "inner", "irreducibility_report", "is_generic", "make_equitant", "meridian_through",
    "multiplication_kernel", "normal_form_verify", "normalize", "parabolic_normal_basis",
    "phi_of", "phi_projectivity_test", "point_signature", "projective_distance",
    "projectively_equal", "real_spine", "realness_witness", "recover_family",
    "slice_through", "subspace_distance", "trace_base", "transversal_at",
]
