"""Closed-form Ext groups between Frobenius-twisted strict polynomial functors."""
from .errors import (DegreeError, ExprSyntaxError, HypothesisError, IntegralityError,
                     PartitionError, ResourceGuardError, TwistExtError,
                     UnsupportedFunctorError, WeightMismatchError)
from .extcalc import (ExtAnswer, SpechtLabel, check_divided_vs_weyl_schur,
                      ext_divided_vs_twisted, ext_untwisted_from_fk, ext_weyl_schur_twisted,
                      ext_weyl_vs_fk_schur, multidegree_component)
from .functor import parse_expr, render
from .graded import GradedSpace, ShiftSpec, SymbolicSpace, a_space, s_space
from .kan import evaluate_ext_query, kan_value_conditional, normalize
from .partition import (Partition, f_k, f_k_iterated, from_core_quotient, p_core_quotient,
                        parse_partition)
from .poly import PoincarePoly, Poly

__version__ = "0.1.0"
