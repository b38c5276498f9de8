"""Binary sequence families from cyclic elliptic curves over odd-characteristic
finite fields: s_{i,j} = eta(z_i([j]P)) for z_i in a complement of the
constants in a Riemann-Roch space L(Q)."""

from .gf import GF, Extension, FieldError, make_extension, make_field
from .curve import (INFINITY, SearchExhausted, SingularCurveError, WeierstrassCurve, count_points,
                    enumerate_points, group_summary, is_admissible_trace, make_curve, search_curve)
from .funcfield import Place, PlaceKind, RationalFunction, find_place, iter_places, rr_basis, verify_basis
from .seqgen import Mode, SequenceFamily, build_family, generate_family, generate_sequence
from .analysis import (analyze, balance, bound_balance, bound_correlation, bound_lc, family_correlation,
                       family_lc, linear_complexity, places_count_enumerate, places_count_formula)

__version__ = "0.1.0"
