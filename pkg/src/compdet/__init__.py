"""Exact determinants of power-composition matrices.

Matrices indexed by integer compositions with entries prod_j (x_j+a_j)^b_j
have determinants with fully factored closed forms.  This package builds the
matrices, computes their determinants by independent exact engines
(division-free cofactor expansion, fraction-free elimination, a recursive
block factorization, and a literal column reduction), evaluates the closed
product formulas, and cross-verifies everything on finite grids — all in
exact big-integer arithmetic.
"""

from .compositions import (
    CompositionList,
    enumerate_proper,
    enumerate_weak,
    proper_to_weak,
    weak_to_proper,
)
from .engines import (
    column_reduce,
    det_bareiss,
    det_block_recursive,
    det_cofactor,
    pivot_diagonal_closed,
    pivot_table,
    shift_power_det,
    shift_power_matrix,
)
from .formulas import (
    check_equivalence,
    delta_int_flat,
    delta_int_nested,
    delta_multivariate,
    delta_proper,
    delta_proper_int,
    delta_univariate,
    proper_from_weak,
)
from .matrices import (
    IntMatrix,
    PolyMatrix,
    build_general,
    build_integer,
    build_proper,
    build_univariate,
    specialize,
)
from .poly import (
    FactoredForm,
    MultiPoly,
    NotDivisible,
    RationalFn,
    exact_div,
    format_canonical,
    parse_canonical,
    parse_factored,
    ratfn_equal,
)
from .verify import VerifyReport, grid_symbolic, identity_suite, random_point_check

__version__ = "0.1.0"

__all__ = [
    "CompositionList",
    "FactoredForm",
    "IntMatrix",
    "MultiPoly",
    "NotDivisible",
    "PolyMatrix",
    "RationalFn",
    "VerifyReport",
    "build_general",
    "build_integer",
    "build_proper",
    "build_univariate",
    "check_equivalence",
    "column_reduce",
    "delta_int_flat",
    "delta_int_nested",
    "delta_multivariate",
    "delta_proper",
    "delta_proper_int",
    "delta_univariate",
    "det_bareiss",
    "det_block_recursive",
    "det_cofactor",
    "enumerate_proper",
    "enumerate_weak",
    "exact_div",
    "format_canonical",
    "grid_symbolic",
    "identity_suite",
    "parse_canonical",
    "parse_factored",
    "pivot_diagonal_closed",
    "pivot_table",
    "proper_from_weak",
    "proper_to_weak",
    "random_point_check",
    "ratfn_equal",
    "shift_power_det",
    "shift_power_matrix",
    "specialize",
    "weak_to_proper",
]
