"""The four staircase differential equations and their verified solutions.

Each problem is solved by the transform rule algebra: transform the
equation, collect the data terms, divide by the symbol of the operator
(a resolvent when a zero-order term is present), and invert term by term
into staircase powers and Mittag-Leffler factors. The result is then
checked the hard way, by applying the governing operator numerically and
measuring the residual against the right-hand side. Variant closed forms
in circulation for these problems are evaluated alongside and measured by
the same residual, never assumed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature
from .core import GridFunction
from .exceptions import DomainError
from .laplace import (
    InverseTerm,
    LaplaceExpr,
    LaplaceTerm,
    evaluate_inverse,
    invert_terms,
    solve_resolvent,
    transform_power,
)
from .nonlocal_ops import OperatorKind, OperatorSpec, Side, evaluate
from .special import mittag_leffler, ml_half_half_closed, rgamma
from .staircase import CantorSpec, StaircaseFn


@dataclass(frozen=True)
class InitialDatum:
    """One supplied terminal datum: operator order, terminal point, value.

    Integer orders are iterated staircase derivatives; fractional orders are
    RL operators (negative = integral). fits_rule_slot records whether the
    transform rule for the governing operator has a slot of this exact order.
    """

    order: Fraction
    terminal: float
    value: float
    fits_rule_slot: bool = True


@dataclass(frozen=True)
class ExampleProblem:
    """operator(y) = lam * y + rhs, with terminal data."""

    example_id: int
    operator: OperatorSpec
    order: Fraction
    rhs_terms: tuple[tuple[float, Fraction], ...]
    rhs_text: str
    initial_data: tuple[InitialDatum, ...]
    lam: float


@dataclass
class SolutionReport:
    """Derived solution, its operator residual, and the variant comparison."""

    problem: ExampleProblem
    solution: GridFunction
    residual: GridFunction
    max_residual: float
    variant_solution: GridFunction | None
    variant_discrepancy: float
    variant_max_residual: float
    transform: LaplaceExpr
    derived_terms: tuple[InverseTerm, ...]
    variant_terms: tuple[InverseTerm, ...] | None
    notes: tuple[str, ...]
    solution_fn: object
    variant_fn: object


_HALF = Fraction(1, 2)


def default_staircase() -> StaircaseFn:
    return StaircaseFn(CantorSpec())


def example_problem(example_id: int, lam: float = -0.5) -> ExampleProblem:
    """The four fixed problems; lam only parameterizes the fourth."""
    if example_id == 1:
        return ExampleProblem(
            1,
            OperatorSpec(OperatorKind.CAPUTO, 0.5, terminal=0.0, side=Side.LEFT),
            _HALF,
            ((2.0, Fraction(0)),),
            "2",
            (InitialDatum(Fraction(1), 0.0, 1.0, fits_rule_slot=False),),
            0.0,
        )
    if example_id == 2:
        return ExampleProblem(
            2,
            OperatorSpec(OperatorKind.CAPUTO, 0.5, terminal=1.0, side=Side.LEFT),
            _HALF,
            ((-1.0, Fraction(1)),),
            "1 - S(x)",
            (InitialDatum(Fraction(1), 1.0, 0.0, fits_rule_slot=False),),
            0.0,
        )
    if example_id == 3:
        return ExampleProblem(
            3,
            OperatorSpec(OperatorKind.RL_DERIVATIVE, 0.5, terminal=0.0, side=Side.LEFT),
            _HALF,
            (),
            "y(x)",
            (InitialDatum(Fraction(-1, 2), 0.0, 1.0),),
            1.0,
        )
    if example_id == 4:
        if not math.isfinite(lam):
            raise DomainError(f"lambda must be finite, got {lam!r}")
        return ExampleProblem(
            4,
            OperatorSpec(
                OperatorKind.RL_DERIVATIVE, 4.0 / 3.0, terminal=0.0, side=Side.LEFT
            ),
            Fraction(4, 3),
            ((1.0, Fraction(2)),),
            "lam * y(x) + S(x)^2",
            (
                InitialDatum(Fraction(1, 3), 0.0, 1.0),
                InitialDatum(Fraction(-1, 6), 0.0, 2.0, fits_rule_slot=False),
            ),
            lam,
        )
    raise DomainError(f"example id must be 1..4, got {example_id!r}")


def _derive_transform(
    problem: ExampleProblem, scale_rhs: float, scale_data: float
) -> tuple[LaplaceExpr, tuple[str, ...]]:
    """Transform the equation and solve for the unknown image symbolically.

    Works in the coordinate w = S(x) - S(terminal), so the standard
    terminal-zero transform rules apply to every problem, including the one
    based at S = 1.
    """
    beta = problem.order
    notes: list[str] = []

    rhs = LaplaceExpr.zero()
    for coeff, eta in problem.rhs_terms:
        rhs = rhs + transform_power(eta).scaled(coeff * scale_rhs)

    data_terms = LaplaceExpr.zero()
    if problem.example_id == 1:
        # The stated datum is the first staircase derivative at the terminal,
        # which no solution of this equation has finite; the rule's only slot
        # takes the terminal value of y, and the datum value is used there.
        notes.append(
            "the supplied first-derivative datum is unattainable (every "
            "solution has an unbounded staircase derivative at the terminal); "
            "its value is consumed as the terminal value of y, the slot the "
            "transform rule actually has"
        )
        y0 = problem.initial_data[0].value * scale_data
        data_terms = data_terms + LaplaceExpr.of(LaplaceTerm(y0, beta - 1))
    elif problem.example_id == 2:
        notes.append(
            "the supplied derivative datum holds identically for the whole "
            "solution family; the terminal value y = 0 is the choice that "
            "closes the problem and it reproduces the variant closed form"
        )
        y0 = problem.initial_data[0].value * scale_data
        data_terms = data_terms + LaplaceExpr.of(LaplaceTerm(y0, beta - 1))
    elif problem.example_id == 3:
        c1 = problem.initial_data[0].value * scale_data
        data_terms = data_terms + LaplaceExpr.of(LaplaceTerm(c1, Fraction(0)))
    else:
        c1 = problem.initial_data[0].value * scale_data
        data_terms = data_terms + LaplaceExpr.of(LaplaceTerm(c1, Fraction(0)))
        # The order -1/6 datum fits no slot of the order 4/3 rule (slots are
        # at orders 1/3 and -2/3). It is excluded; a zero-coefficient term at
        # its would-be image keeps the three-term basis explicit.
        notes.append(
            "the order -1/6 datum fits no slot of the order 4/3 transform "
            "rule (slots take orders 1/3 and -2/3); it is excluded and the "
            "middle basis term keeps coefficient 0"
        )
        data_terms = data_terms + LaplaceExpr.of(LaplaceTerm(0.0, _HALF))

    numerator = rhs + data_terms
    if problem.lam == 0.0:
        image = numerator.shifted(-beta)
    else:
        image = solve_resolvent(numerator, beta, problem.lam)
    return image, tuple(notes)


def _variant_terms(problem: ExampleProblem) -> tuple[tuple[InverseTerm, ...], str] | None:
    """Closed forms in circulation for these problems, for comparison only."""
    if problem.example_id == 1:
        terms = (
            InverseTerm(rgamma(1.5), Fraction(1)),
            InverseTerm(2.0 * rgamma(0.5), Fraction(-1, 2)),
        )
        return terms, (
            "a variant closed form adds an S^(-1/2) term, whose Caputo "
            "derivative diverges; the residual check rejects it"
        )
    if problem.example_id == 2:
        return (InverseTerm(-rgamma(2.5), Fraction(3, 2)),), (
            "the variant closed form matches the derived solution exactly"
        )
    if problem.example_id == 3:
        return (InverseTerm(1.0, Fraction(-1, 2), _HALF, _HALF, -1.0),), (
            "the transform algebra fixes a positive Mittag-Leffler argument; "
            "the sign-flipped variant fails the residual check"
        )
    if problem.example_id == 4:
        q = Fraction(4, 3)
        lam = problem.lam
        terms = (
            InverseTerm(1.0, q, q, q, lam),
            InverseTerm(2.0, Fraction(-1, 6), q, Fraction(5, 6), lam),
            InverseTerm(2.0, Fraction(10, 3), q, Fraction(13, 3), lam),
        )
        return terms, (
            "the variant formula carries coefficient 2 on the middle term "
            "and power 4/3 on the leading term; the rule-based inversion "
            "gives coefficient 0 and power 1/3, and the residual check "
            "confirms the derived form"
        )
    return None


def default_grid(example_id: int, sf, count: int = 25):
    """Grid with S(x) in [0.1, 1] ([1.1, 2] for the terminal-1 problem)."""
    lo = Fraction(11, 10) if example_id == 2 else Fraction(1, 10)
    hi = Fraction(2) if example_id == 2 else Fraction(1)
    us = [lo + (hi - lo) * Fraction(i, count - 1) for i in range(count)]
    return [sf.quantile_exact(u) for u in us]


def _terms_fn(terms, sf, ua: float):
    def fn(x):
        w = sf.eval(x) - ua
        return evaluate_inverse(terms, w)

    return fn


def example_solution_fn(example_id: int, sf=None, lam: float = -0.5):
    """Solution formula evaluator without the residual audit (for plotting)."""
    if sf is None:
        sf = default_staircase()
    problem = example_problem(example_id, lam)
    image, _ = _derive_transform(problem, 1.0, 1.0)
    terms = invert_terms(image)
    ua = sf.eval(problem.operator.terminal)
    return _terms_fn(terms, sf, ua)


def solve_example(
    example_id: int,
    sf=None,
    lam: float = -0.5,
    grid=None,
    scale_rhs: float = 1.0,
    scale_data: float = 1.0,
) -> SolutionReport:
    """Derive, evaluate, and residual-check one example problem."""
    if sf is None:
        sf = default_staircase()
    problem = example_problem(example_id, lam)
    if grid is None:
        grid = default_grid(example_id, sf)
    xs = list(grid)

    image, notes = _derive_transform(problem, scale_rhs, scale_data)
    terms = invert_terms(image)
    ua = sf.eval(problem.operator.terminal)
    solution_fn = _terms_fn(terms, sf, ua)

    def rhs_fn(x) -> float:
        w = sf.eval(x) - ua
        return scale_rhs * sum(c * w ** float(eta) for c, eta in problem.rhs_terms)

    xs_float = np.array([float(x) for x in xs])
    sol_vals = np.array([solution_fn(x) for x in xs])
    res_vals = np.empty_like(sol_vals)
    for i, x in enumerate(xs):
        lhs = evaluate(problem.operator, solution_fn, sf, x)
        rhs = problem.lam * sol_vals[i] + rhs_fn(x)
        res_vals[i] = abs(lhs - rhs) / max(1.0, abs(rhs))
    solution = GridFunction(xs_float, sol_vals, label=f"example-{example_id}")
    residual = GridFunction(xs_float, res_vals, label=f"residual-{example_id}")

    variant_solution = None
    variant_terms_out = None
    variant_fn = None
    variant_discrepancy = 0.0
    variant_max_residual = 0.0
    if scale_rhs == 1.0 and scale_data == 1.0:
        variant = _variant_terms(problem)
        if variant is not None:
            variant_terms_out, variant_note = variant
            notes = notes + (variant_note,)
            variant_fn = _terms_fn(variant_terms_out, sf, ua)
            var_vals = np.array([variant_fn(x) for x in xs])
            variant_solution = GridFunction(
                xs_float, var_vals, label=f"variant-{example_id}"
            )
            variant_discrepancy = float(np.max(np.abs(var_vals - sol_vals)))
            worst = 0.0
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                for i, x in enumerate(xs):
                    rhs = problem.lam * var_vals[i] + rhs_fn(x)
                    try:
                        lhs = evaluate(problem.operator, variant_fn, sf, x)
                    except (ArithmeticError, ValueError, RuntimeError):
                        worst = math.inf
                        break
                    worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
            variant_max_residual = worst

    return SolutionReport(
        problem=problem,
        solution=solution,
        residual=residual,
        max_residual=float(np.max(res_vals)),
        variant_solution=variant_solution,
        variant_discrepancy=variant_discrepancy,
        variant_max_residual=variant_max_residual,
        transform=image,
        derived_terms=terms,
        variant_terms=variant_terms_out,
        notes=notes,
        solution_fn=solution_fn,
        variant_fn=variant_fn,
    )


def gap_plateau_spread(report: SolutionReport, gap=None, samples: int = 5) -> float:
    """Spread of the solution over a deleted-gap interval; 0 when constant.

    Defaults to the central gap (1/3, 2/3), shifted into (4/3, 5/3) for the
    problem whose domain starts at S = 1.
    """
    if gap is None:
        shift = 1 if report.problem.example_id == 2 else 0
        gap = (Fraction(1, 3) + shift, Fraction(2, 3) + shift)
    lo, hi = Fraction(gap[0]), Fraction(gap[1])
    pts = [lo + (hi - lo) * Fraction(k + 1, samples + 1) for k in range(samples)]
    vals = [report.solution_fn(p) for p in pts]
    return max(vals) - min(vals)


def _classical_oracle(example_id: int, xs, lam: float):
    """Classical solutions for the identity-map limit, built independently.

    The first three use textbook closed forms (error function form for the
    half-order resolvent); the fourth uses variation of parameters, with the
    forcing convolved against the resolvent kernel by direct quadrature.
    """
    xs = [float(x) for x in xs]
    if example_id == 1:
        return [1.0 + (4.0 / math.sqrt(math.pi)) * math.sqrt(x) for x in xs]
    if example_id == 2:
        return [-(4.0 / (3.0 * math.sqrt(math.pi))) * (x - 1.0) ** 1.5 for x in xs]
    if example_id == 3:
        return [ml_half_half_closed(math.sqrt(x)) / math.sqrt(x) for x in xs]
    if example_id == 4:
        beta = 4.0 / 3.0

        def kernel(t: float) -> float:
            return t ** (beta - 1.0) * mittag_leffler(beta, beta, lam * t ** beta)

        out = []
        for x in xs:
            homogeneous = kernel(x)
            forced = quadrature.gauss_composite(
                lambda t: kernel(x - t) * t * t, 0.0, x, nodes=96
            )
            out.append(homogeneous + forced)
        return out
    raise DomainError(f"example id must be 1..4, got {example_id!r}")


def alpha_one_degeneration(example_id: int, grid=None, lam: float = -0.5) -> float:
    """Max deviation from the classical solution when the map is identity."""
    from .staircase import IdentityMap

    sf = IdentityMap()
    report = solve_example(example_id, sf=sf, lam=lam, grid=grid)
    oracle = _classical_oracle(example_id, report.solution.xs, lam)
    return float(np.max(np.abs(report.solution.values - np.asarray(oracle))))
