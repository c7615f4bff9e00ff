"""Exact certification of general-position conditions for degree-M
hypersurfaces in P^M.

The public surface: polynomial arithmetic over Q and F_p, Taylor expansion
at projective points, Groebner-based dimension checks, point
classification with condition (G) and the regular-sequence conditions,
blow-up rank analysis, closed-form codimension tables, and a finite-field
census.
"""

from .blowup import (BlowupPointVerdict, BlowupStatus, LocalModel,
                     Rank3BlowupReport, blow_up_rank3_point,
                     rank_after_blowup_direct, rank_after_blowup_formula)
from .census import (CensusConfig, CensusReport, EvidenceVerdict,
                     check_no_planes_M5, check_no_singular_line_in_3space_M5,
                     enumerate_points, run_census)
from .codim import (BoundsLedger, CodimReport, bound_B1, bound_B2, bound_B3,
                    bound_BG, codim_report, dim_parameter_space, gamma,
                    h_analysis, h_poly, target, verify_all_bounds)
from .errors import (BudgetExceededError, ClassificationError, FieldError,
                     InvariantViolationError, ParseError, PointError)
from .expansion import ProjectivePoint, TaylorExpansion, expand_at
from .fields import QQ, PrimeField, QuadraticExtensionField, Rationals
from .groebner import (IdealDimension, groebner_basis, ideal_dimension,
                       is_regular_sequence)
from .poly import Polynomial, PolyRing
from .regularity import (RegularityVerdict, check_regularity, expected_dims,
                         hypertangent_base_dim)
from .singularity import (ConditionGReport, PointKind, PointReport,
                          check_condition_g, classify_point, diagonalize,
                          singular_locus_dimension)
from .textform import (HypersurfaceInput, load_hypersurface,
                       parse_hypersurface, parse_polynomial)

__version__ = "0.1.0"