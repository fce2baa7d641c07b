"""Exact computations for blowups of toric surfaces at the point (1, 1):
the xi_m curves, intersection numbers, section spaces and MDS certificates."""

from .blowup import (DegreeInterval, NegativityReport, NumericClass, class_of,
                     degree_interval, intersect, is_negative_curve,
                     vertical_segment_height)
from .certify import (Certificate, Main2Params, certify_main1, certify_main2,
                      certify_small_beta, example_family, example_params, scan)
from .curves import (check_recursion_b, check_recursion_c, eisenstein_certificate,
                     fgh, parallelogram_irreducible, xi)
from .fields import QQ, FieldSpec
from .lattice import (RationalTriangle, area, contains, lattice_points,
                      normal_fan_rays, parallel_triangle, wps_weights)
from .laurent import LaurentPoly
from .linalg import IntMatrix, SnfResult, good_prime, kernel, smith_normal_form
from .sections import (HcReport, SectionProblem, build_zeta_p, constraint_matrix,
                       delta_bar_validator, hc_member)

__version__ = "0.1.0"
