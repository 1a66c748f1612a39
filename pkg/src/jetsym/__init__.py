"""jetsym: jet-space prolongation calculus and symmetry verification.

The library implements expressions with exact rational arithmetic and a
canonical form (``expr``, ``parsing``), jet-space geometry with total
derivatives and contact forms (``jets``), the standard and deformed
prolongations of point vector fields (``prolong``), symmetry verdicts
for differential equations in solved form (``symmetry``), the structure
theory of the deforming form (``gauge``), and a batch CLI (``cli``).
"""

from .backend import BACKEND
from .errors import JetsymError
from .expr import (
    DEFAULT_SEED,
    Expr,
    VarName,
    Verdict,
    as_expr,
    eval_expr,
    exp,
    expr_prod,
    expr_sum,
    free_variables,
    is_polynomial,
    is_zero,
    normalize,
    pdiff,
    rational,
    substitute,
    to_string,
    variable,
    zero_verdict,
)
from .gauge import (
    GaugeFunction,
    darboux_derivative,
    maurer_cartan_check,
    maurer_cartan_check_on_equation,
    scalar_potential,
    verify_gauge_equivalence_scalar,
)
from .jets import (
    JetCoordinate,
    JetSpec,
    JetVectorField,
    MultiIndex,
    MuForm,
    OneForm,
    TwoForm,
    contact_form,
    d_closed,
    du,
    dx,
    exterior_derivative,
    in_contact_module,
    in_vector_contact_module,
    interior_product,
    lie_derivative,
    scalar_differential,
    total_derivative,
    total_derivative_path,
    truncated_total_derivative,
)
from .parsing import parse
from .problemfile import ProblemFile, load_problem
from .prolong import (
    NablaOperator,
    PointVectorField,
    difference_terms,
    prolong_lambda,
    prolong_mu_scalar,
    prolong_mu_vector,
    prolong_standard,
)
from .symmetry import (
    DifferentialEquation,
    characteristic,
    characterization_check,
    check_symmetry,
    coincide_on_invariant_set,
    commutator_with_total_derivative,
    invariant_set_relations,
    restrict_to_solution_manifold,
)

__all__ = [
    "BACKEND",
    "DEFAULT_SEED",
    "DifferentialEquation",
    "Expr",
    "GaugeFunction",
    "JetCoordinate",
    "JetSpec",
    "JetVectorField",
    "JetsymError",
    "MuForm",
    "MultiIndex",
    "NablaOperator",
    "OneForm",
    "PointVectorField",
    "ProblemFile",
    "TwoForm",
    "VarName",
    "Verdict",
    "as_expr",
    "characteristic",
    "characterization_check",
    "check_symmetry",
    "coincide_on_invariant_set",
    "commutator_with_total_derivative",
    "contact_form",
    "d_closed",
    "darboux_derivative",
    "difference_terms",
    "du",
    "dx",
    "eval_expr",
    "exp",
    "expr_prod",
    "expr_sum",
    "exterior_derivative",
    "free_variables",
    "in_contact_module",
    "in_vector_contact_module",
    "interior_product",
    "invariant_set_relations",
    "is_polynomial",
    "is_zero",
    "lie_derivative",
    "load_problem",
    "maurer_cartan_check",
    "maurer_cartan_check_on_equation",
    "normalize",
    "parse",
    "pdiff",
    "prolong_lambda",
    "prolong_mu_scalar",
    "prolong_mu_vector",
    "prolong_standard",
    "rational",
    "restrict_to_solution_manifold",
    "scalar_differential",
    "scalar_potential",
    "substitute",
    "to_string",
    "total_derivative",
    "total_derivative_path",
    "truncated_total_derivative",
    "variable",
    "verify_gauge_equivalence_scalar",
    "zero_verdict",
]
