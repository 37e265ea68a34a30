"""Verification suite: nine checks, each printing pass/fail with the
measured value against its tolerance.

The checks cover staircase exactness, the Beta identities, Mittag-Leffler
special cases, the power rules, the four composition identities, the
transform rules, classical degeneration against an independent
Grunwald-Letnikov implementation, the four worked example problems, and
byte-level determinism of the figure datasets.
"""

from __future__ import annotations

import random
import tempfile
import time
import warnings

import numpy as np
from dataclasses import dataclass, field
from fractions import Fraction

from . import classical
from .laplace import laplace_numeric
from .nonlocal_ops import (
    CompositionKind,
    OperatorKind,
    OperatorSpec,
    caputo_derivative,
    composition_residual,
    power_rule_derivative,
    power_rule_integral,
    rl_derivative,
    rl_integral,
)
from .special import (
    beta_fractal_quadrature,
    gamma_classical,
    ml_special_case_residuals,
)
from .staircase import CantorSpec, IdentityMap, StaircaseFn
from .solutions import gap_plateau_spread, solve_example

_SEED = 20260814


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    details: tuple[str, ...] = field(default_factory=tuple)


def _result(name, measured, tolerance, details=()):
    return CheckResult(name, measured <= tolerance, measured, tolerance, tuple(details))


def check_staircase_exactness() -> CheckResult:
    sf = StaircaseFn(CantorSpec())
    fixed = {
        Fraction(0): Fraction(0),
        Fraction(1, 4): Fraction(1, 3),
        Fraction(1, 3): Fraction(1, 2),
        Fraction(1, 2): Fraction(1, 2),
        Fraction(2, 3): Fraction(1, 2),
        Fraction(1): Fraction(1),
    }
    worst = 0.0
    for x, want in fixed.items():
        worst = max(worst, abs(float(sf.eval_exact(x) - want)))
    rng = random.Random(_SEED)
    for _ in range(1000):
        den = rng.randint(2, 10**9)
        x = Fraction(rng.randint(0, den), den)
        sym = abs(float(sf.eval_exact(x) + sf.eval_exact(1 - x) - 1))
        ss = abs(float(sf.eval_exact(x / 3) - sf.eval_exact(x) / 2))
        worst = max(worst, sym, ss)
    return _result("staircase-exactness", worst, 2.0**-50)


def check_beta_identities() -> CheckResult:
    worst = 0.0
    grid = (0.5, 1.0, 1.5, 2.0)
    for r in grid:
        for w in grid:
            q = beta_fractal_quadrature(r, w)
            ref = gamma_classical(r) * gamma_classical(w) / gamma_classical(r + w)
            worst = max(worst, abs(q - ref) / ref)
            worst = max(worst, abs(q - beta_fractal_quadrature(w, r)))
    return _result("beta-identities", worst, 1e-4)


def check_ml_special_cases() -> CheckResult:
    zs = [3.0 * k / 63 for k in range(64)]
    residuals = ml_special_case_residuals(zs)
    keys = ("exp", "expm1_ratio", "cosh", "sinh_ratio")
    worst = max(residuals[k] for k in keys)
    details = tuple(f"{k}: {residuals[k]:.3e}" for k in keys)
    return _result("ml-special-cases", worst, 1e-8, details)


def check_power_rules() -> CheckResult:
    sf = StaircaseFn(CantorSpec())
    us = [Fraction(9 + 4 * i, 45) for i in range(10)]
    xs = [float(sf.quantile_exact(u)) for u in us]
    worst = 0.0
    for beta in (0.3, 0.5):
        int_spec = OperatorSpec(OperatorKind.RL_INTEGRAL, beta, terminal=0.0)
        der_spec = OperatorSpec(OperatorKind.RL_DERIVATIVE, beta, terminal=0.0)
        for eta in (0.0, 0.5, 1.0, 2.0):
            def f(x, _eta=eta):
                return sf.eval(x) ** _eta

            for x in xs:
                closed = power_rule_integral(beta, eta, sf, 0.0, x)
                got = rl_integral(int_spec, f, sf, x)
                worst = max(worst, abs(got - closed) / abs(closed))
                closed = power_rule_derivative(beta, eta, sf, 0.0, x)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    got = rl_derivative(der_spec, f, sf, x)
                worst = max(worst, abs(got - closed) / abs(closed))
    return _result("power-rules", worst, 1e-3)


def check_compositions() -> CheckResult:
    sf = StaircaseFn(CantorSpec())

    def f(x):
        return sf.eval(x) ** 2

    details = []
    worst = 0.0
    for kind in CompositionKind:
        res = composition_residual(kind, f, 0.5, sf, (0.0, 1.0))
        details.append(f"{kind.name.lower()}: {res:.3e}")
        worst = max(worst, res)
    return _result("composition-identities", worst, 5e-3, details)


def check_laplace_rules() -> CheckResult:
    sf = StaircaseFn(CantorSpec())
    worst = 0.0
    for beta in (0.0, 0.5, 1.0, 2.0):
        def f(x, _b=beta):
            return sf.eval(x) ** _b

        for sigma in (1.0, 2.0, 5.0):
            got = laplace_numeric(f, sf, sigma)
            want = gamma_classical(1.0 + beta) / sigma ** (beta + 1.0)
            worst = max(worst, abs(got - want) / want)
    power_worst = worst

    spec = OperatorSpec(OperatorKind.RL_INTEGRAL, 0.5, terminal=0.0, nodes_per_unit=64)

    lemma_worst = 0.0
    for sigma in (1.0, 2.0):
        u_max = 12.0 / sigma + 2.0
        # Sample the numeric RL integral once on a clustered grid and
        # interpolate; transforming it node by node would redo the same
        # product integration thousands of times. The nested half grid
        # extrapolates away the interpolant's quadratic error.
        uu = u_max * (np.arange(97) / 96.0) ** 2
        samples = np.array(
            [0.0]
            + [
                rl_integral(spec, sf.eval, sf, sf.quantile_exact(float(u)))
                for u in uu[1:]
            ]
        )

        def interp_fn(gu, gv):
            return lambda x: float(np.interp(sf.eval(x), gu, gv))

        fine = laplace_numeric(interp_fn(uu, samples), sf, sigma, tol=1e-3, u_max=u_max)
        half = laplace_numeric(
            interp_fn(uu[::2], samples[::2]), sf, sigma, tol=1e-3, u_max=u_max
        )
        got = (4.0 * fine - half) / 3.0
        want = sigma ** -0.5 * (1.0 / sigma**2)
        lemma_worst = max(lemma_worst, abs(got - want) / want)
    details = (
        f"power rule: {power_worst:.3e} (tol 1e-4)",
        f"integral rule: {lemma_worst:.3e} (tol 1e-3)",
    )
    measured = max(power_worst / 1e-4, lemma_worst / 1e-3)
    return CheckResult(
        "laplace-rules",
        power_worst <= 1e-4 and lemma_worst <= 1e-3,
        measured,
        1.0,
        details,
    )


def check_classical_degeneration() -> CheckResult:
    ident = IdentityMap()
    xs = (0.3, 0.55, 0.8, 1.0)
    worst = 0.0
    for beta in (0.3, 0.5, 0.8):
        int_spec = OperatorSpec(OperatorKind.RL_INTEGRAL, beta, terminal=0.0)
        der_spec = OperatorSpec(OperatorKind.RL_DERIVATIVE, beta, terminal=0.0)
        cap_spec = OperatorSpec(OperatorKind.CAPUTO, beta, terminal=0.0)
        for k in (0, 1, 2):
            def f(x, _k=k):
                return float(x) ** _k

            for x in xs:
                pairs = (
                    (rl_integral(int_spec, f, ident, x),
                     classical.rl_integral_classical(f, 0.0, x, beta)),
                    (rl_derivative(der_spec, f, ident, x),
                     classical.rl_derivative_classical(f, 0.0, x, beta)),
                    (caputo_derivative(cap_spec, f, ident, x),
                     classical.caputo_classical(f, 0.0, x, beta)),
                )
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    for got, ref in pairs:
                        worst = max(worst, abs(got - ref) / max(1.0, abs(ref)))
    return _result("classical-degeneration", worst, 1e-3)


def check_examples() -> CheckResult:
    sf = StaircaseFn(CantorSpec())
    details = []
    worst = 0.0
    structure_ok = True
    plateau_worst = 0.0
    for example_id in (1, 2, 3, 4):
        report = solve_example(example_id, sf=sf)
        worst = max(worst, report.max_residual)
        plateau_worst = max(plateau_worst, abs(gap_plateau_spread(report)))
        details.append(
            f"example {example_id}: residual {report.max_residual:.3e}, "
            f"variant deviation {report.variant_discrepancy:.3e}, "
            f"variant residual {report.variant_max_residual:.3e}"
        )
        if example_id == 4:
            triples = sorted(
                (t.ml_eta, t.ml_nu, t.power) for t in report.derived_terms
            )
            want = sorted(
                [
                    (Fraction(4, 3), Fraction(4, 3), Fraction(1, 3)),
                    (Fraction(4, 3), Fraction(5, 6), Fraction(-1, 6)),
                    (Fraction(4, 3), Fraction(13, 3), Fraction(10, 3)),
                ]
            )
            structure_ok = triples == want
            details.append(
                "example 4 basis: "
                + ", ".join(
                    f"coeff {t.coeff:g} * S^({t.power}) * E_({t.ml_eta},{t.ml_nu})"
                    for t in report.derived_terms
                )
            )
    details.append(f"gap plateau spread: {plateau_worst:.3e}")
    if not structure_ok:
        details.append("example 4 does not carry the expected three-term basis")
    passed = worst <= 1e-2 and structure_ok and plateau_worst <= 1e-12
    return CheckResult("example-problems", passed, worst, 1e-2, tuple(details))


def check_determinism() -> CheckResult:
    from .figures import write_figures

    outputs = []
    for _ in range(2):
        with tempfile.TemporaryDirectory() as tmp:
            paths = write_figures(tmp, fmt="csv")
            run = {}
            for path in paths:
                with open(path, "rb") as fh:
                    run[path.rsplit("/", 1)[-1]] = fh.read()
            outputs.append(run)
    same = outputs[0] == outputs[1]
    n = len(outputs[0])
    return CheckResult(
        "figure-determinism",
        same,
        0.0 if same else 1.0,
        0.0,
        (f"{n} csv datasets compared byte for byte",),
    )


_CHECKS = (
    check_staircase_exactness,
    check_beta_identities,
    check_ml_special_cases,
    check_power_rules,
    check_compositions,
    check_laplace_rules,
    check_classical_degeneration,
    check_examples,
    check_determinism,
)


def run_all(writer=print) -> bool:
    """Run every check; print one line per check; True when all pass."""
    all_pass = True
    t0 = time.time()
    for check in _CHECKS:
        t = time.time()
        result = check()
        elapsed = time.time() - t
        status = "PASS" if result.passed else "FAIL"
        writer(
            f"{status} {result.name}: measured {result.measured:.3e} "
            f"(tolerance {result.tolerance:.3e}) [{elapsed:.1f}s]"
        )
        for line in result.details:
            writer(f"     {line}")
        all_pass = all_pass and result.passed
    writer(f"{'PASS' if all_pass else 'FAIL'} overall [{time.time() - t0:.1f}s]")
    return all_pass
