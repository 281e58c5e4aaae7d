"""Isometry-dual and self-orthogonal flags of algebraic geometry codes on Kummer curves."""

from .config import Config, load_config, parse_vector, render_vector
from .errors import *  # noqa: F401,F403
from .evalcode import BuildingBasis, Code, EvalSet, building_basis, code_at, encode, h_star
from .finite_field import FieldElement, FieldSpec, RowReducer, ff_arith, ff_make, ff_sqrt_char2, row_reduce
from .flag import Flag, build_flag, dual_code, verify_isometry_pair
from .isodual import (IsometryReport, general_isometry_solutions, isodual, nullspace_full_weight,
                      product_matrix, translate_flag)
from .isogroup import (count_bounds, enumerate_gamma, enumerate_T0, period, periods,
                       translation_equivalence)
from .kummer_curve import (CurveSpec, Divisor, MonomialFunction, MonomialTerm, Place, curve_make,
                           enumerate_places, evaluate, monomial_divisor, monomial_valuation,
                           parse_function)
from .riemann_roch import h_set, is_principal, pole_function, rr_basis, rr_dim
from .selforth import (construct_self_orthogonal, interpolate_one_point, sqrt_target_vector,
                       verify_divisor_shape)

__version__ = "0.1.0"
