"""Quadrature laboratory: classical rules, exactness certification,
high-precision reference integrals and convergence experiments."""

from .classical import (clenshaw_curtis_rule, gauss_log10_weights, gauss_rule,
                        gauss_rule_mp, jacobi_recurrence, newton_cotes_rule,
                        trapezoid_rule)
from .cubature import (DegreeCount, degree_count, inefficiency_ratio,
                       lattice_count)
from .errors import (ConstructionError, DomainError, EvaluationError,
                     ManifestError, PrecisionError, QuadlabError)
from .exact import (RationalRule, ReferenceValue, chebyshev_moment,
                    exact_newton_cotes, exactness_degree, reference_integral)
from .experiments import (ConvergenceRecord, ErrorTable, build_error_table,
                          convergence_study, error_decomposition, n_to_reach)
from .integrands import Integrand, get_integrand
from .polys import (ChebyshevSeries, chebyshev_coefficients, chebyshev_T,
                    hermite_psi, monomial_gaussian_max)
from .rules import (Domain, Family, QuadratureRule, WeightFunction,
                    apply_rule, quadrature_error)
from .transforms import (ConformalMap, TruncationPlan, strip_map,
                         strip_transformed_rule, truncated_hermite_integrate)

__version__ = "0.1.0"

__all__ = [
    "ChebyshevSeries", "ConformalMap", "ConstructionError",
    "ConvergenceRecord", "DegreeCount", "Domain", "DomainError",
    "ErrorTable", "EvaluationError", "Family", "Integrand", "ManifestError",
    "PrecisionError", "QuadlabError", "QuadratureRule", "RationalRule",
    "ReferenceValue", "TruncationPlan", "WeightFunction", "apply_rule",
    "build_error_table", "chebyshev_T", "chebyshev_coefficients",
    "chebyshev_moment", "clenshaw_curtis_rule", "convergence_study",
    "degree_count", "error_decomposition", "exact_newton_cotes",
    "exactness_degree", "gauss_log10_weights", "gauss_rule", "gauss_rule_mp",
    "get_integrand", "hermite_psi", "inefficiency_ratio", "jacobi_recurrence",
    "lattice_count", "monomial_gaussian_max", "n_to_reach", "newton_cotes_rule",
    "quadrature_error", "reference_integral", "strip_map",
    "strip_transformed_rule", "trapezoid_rule", "truncated_hermite_integrate",
]
