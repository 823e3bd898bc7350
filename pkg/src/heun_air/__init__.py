"""Closed-form solution bases for three solvable families of second-order
linear ODEs, with parameter-map conversions, a first-order non-local
transformation toolkit, and independent numeric verification."""

from .errors import (BranchError, ConvergenceError, DegenerateError,
                     DegreeCapError, DomainError, HeunAirError,
                     NonFiniteError, ParamError, PoleError,
                     RemovablePointError, SchemaError, StiffnessError,
                     ZeroCoefficientError)
from .numkernel import (Poly, RatFun, as_complex, poly_x, rat_derivative,
                        rat_equal, rat_eval)
from .specialfns import (FnValue, erf_like, gamma, hyp0f1, hyp1f1, hyp2f1,
                         inc_beta, inc_gamma_upper, kummer_u, whittaker)
from .forms import (BHEFamily, CanonicalParams, CHEFamily, Family, GHEFamily,
                    LinearODE, NormalParams, canonical_to_family,
                    canonical_to_normal, extract_normal_params,
                    family_to_canonical, family_to_normal,
                    family_to_normal_params, normal_to_family,
                    to_normal_form)
from .abel import (AIRParams, air_to_linear, companion_p_ode,
                   mobius_nonlocal, reconstruct_y)
from .solutions import (SolutionBasis, che_whittaker_params, eval_basis,
                        ghe_exponents, is_liouvillian, make_basis, solve_bhe,
                        solve_che, solve_family, solve_ghe, solve_via_p_route,
                        wronskian_at)
from .verify import (VerificationReport, paper_example_suite, residual_check,
                     rk45_compare, verify_basis, wronskian_check)

__version__ = "0.1.0"

__all__ = [
    "AIRParams", "BHEFamily", "BranchError", "CHEFamily", "CanonicalParams",
    "ConvergenceError", "DegenerateError", "DegreeCapError", "DomainError",
    "Family", "FnValue", "GHEFamily", "HeunAirError", "LinearODE",
    "NonFiniteError", "NormalParams", "ParamError", "Poly", "PoleError",
    "RatFun", "RemovablePointError", "SchemaError", "SolutionBasis",
    "StiffnessError", "VerificationReport", "ZeroCoefficientError",
    "air_to_linear", "as_complex", "canonical_to_family",
    "canonical_to_normal", "che_whittaker_params", "companion_p_ode",
    "erf_like", "eval_basis", "extract_normal_params", "family_to_canonical",
    "family_to_normal", "family_to_normal_params", "gamma", "ghe_exponents",
    "hyp0f1", "hyp1f1", "hyp2f1", "inc_beta", "inc_gamma_upper",
    "is_liouvillian", "kummer_u", "make_basis", "mobius_nonlocal",
    "normal_to_family", "paper_example_suite", "poly_x", "rat_derivative",
    "rat_equal", "rat_eval", "reconstruct_y", "residual_check",
    "rk45_compare", "solve_bhe", "solve_che", "solve_family", "solve_ghe",
    "solve_via_p_route", "to_normal_form", "verify_basis", "whittaker",
    "wronskian_at", "wronskian_check",
]
