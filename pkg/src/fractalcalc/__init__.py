"""Calculus on the triadic Cantor set.

Staircase coordinate, conjugated local derivative and integral, fractal
Gamma and Beta, Mittag-Leffler, nonlocal Riemann-Liouville and Caputo
operators of fractional order, a staircase Laplace transform with rule-based
inversion, and solvers for the standard example equations.
"""

from .exceptions import (
    ConvergenceError,
    DifferentiationNoiseWarning,
    DomainError,
    PoleError,
    ShapeError,
    TailBoundError,
)
from .staircase import (
    ALPHA_CANTOR,
    CantorSpec,
    ExtensionRule,
    IdentityMap,
    StaircaseFn,
    cantor_eval,
    cantor_membership,
    cantor_quantile,
    prefractal_intervals,
)
from .core import (
    ConjugatedFn,
    GridFunction,
    conjugate,
    f_alpha_derivative,
    f_alpha_integral,
    fractal_exp,
    stieltjes_sum,
)
from .special import (
    GammaMode,
    MLParams,
    beta_fractal,
    beta_fractal_quadrature,
    gamma_classical,
    gamma_fractal,
    gamma_fractal_quadrature,
    mittag_leffler,
    ml_half_half_closed,
    ml_special_case_residuals,
    rgamma,
)
from .nonlocal_ops import (
    CompositionKind,
    KernelConvention,
    OperatorKind,
    OperatorSpec,
    Side,
    caputo_derivative,
    composition_residual,
    evaluate,
    power_rule_derivative,
    power_rule_integral,
    rl_derivative,
    rl_integral,
)
from .laplace import (
    InverseTerm,
    LaplaceExpr,
    LaplaceTerm,
    TransformRule,
    apply_rule,
    convolve,
    evaluate_inverse,
    inverse_laplace,
    invert_terms,
    laplace_numeric,
    solve_resolvent,
    transform_caputo,
    transform_constant,
    transform_power,
    transform_rl_derivative,
    transform_rl_integral,
    unknown_transform,
)
from .solutions import (
    ExampleProblem,
    InitialDatum,
    SolutionReport,
    alpha_one_degeneration,
    example_problem,
    example_solution_fn,
    gap_plateau_spread,
    solve_example,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "ALPHA_CANTOR",
    "CantorSpec",
    "CheckResult",
    "CompositionKind",
    "ConjugatedFn",
    "ConvergenceError",
    "DifferentiationNoiseWarning",
    "DomainError",
    "ExampleProblem",
    "ExtensionRule",
    "GammaMode",
    "GridFunction",
    "IdentityMap",
    "InitialDatum",
    "InverseTerm",
    "KernelConvention",
    "LaplaceExpr",
    "LaplaceTerm",
    "MLParams",
    "OperatorKind",
    "OperatorSpec",
    "PoleError",
    "ShapeError",
    "Side",
    "SolutionReport",
    "StaircaseFn",
    "TailBoundError",
    "TransformRule",
    "alpha_one_degeneration",
    "apply_rule",
    "beta_fractal",
    "beta_fractal_quadrature",
    "cantor_eval",
    "cantor_membership",
    "cantor_quantile",
    "caputo_derivative",
    "composition_residual",
    "conjugate",
    "convolve",
    "evaluate",
    "evaluate_inverse",
    "example_problem",
    "example_solution_fn",
    "f_alpha_derivative",
    "f_alpha_integral",
    "fractal_exp",
    "gamma_classical",
    "gamma_fractal",
    "gamma_fractal_quadrature",
    "gap_plateau_spread",
    "inverse_laplace",
    "invert_terms",
    "laplace_numeric",
    "mittag_leffler",
    "ml_half_half_closed",
    "ml_special_case_residuals",
    "power_rule_derivative",
    "power_rule_integral",
    "prefractal_intervals",
    "rgamma",
    "rl_derivative",
    "rl_integral",
    "run_all",
    "solve_example",
    "solve_resolvent",
    "stieltjes_sum",
    "transform_caputo",
    "transform_constant",
    "transform_power",
    "transform_rl_derivative",
    "transform_rl_integral",
    "unknown_transform",
]
