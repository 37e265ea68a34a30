"""Nonlocal staircase operators: RL integrals, RL and Caputo derivatives.

All kernels act in the staircase coordinate u = S(x). Under the certified
kernel convention (exponent beta - 1, classical Gamma normalization) the
conjugated operators are exactly the classical fractional operators; the
dimension-shifted convention replaces the 1 by the set dimension alpha and
renormalizes, and is kept selectable for comparison.

Integrals use product integration: the conjugated integrand is interpolated
piecewise-linearly on a mesh graded toward both endpoints while the kernel
is integrated in closed form cell by cell. Derivatives wrap a Richardson
difference stencil around the lower-order integral, holding the mesh size
fixed across the stencil so quadrature error varies smoothly in the offset
and cancels in the extrapolation.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import quadrature
from .core import conjugate
from .exceptions import DifferentiationNoiseWarning, DomainError
from .special import gamma_classical, rgamma

DELTA_BOUNDARY = 1e-9  # offset for one-sided limits at a terminal


class OperatorKind(enum.Enum):
    RL_INTEGRAL = "rl-integral"
    RL_DERIVATIVE = "rl-derivative"
    CAPUTO = "caputo"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class KernelConvention(enum.Enum):
    """Exponent placement in the staircase power kernel."""

    CONJUGACY_BETA1 = "beta1"
    DIMENSION_SHIFTED = "shifted"


@dataclass(frozen=True)
class OperatorSpec:
    """Operator kind, order, terminal, side, kernel convention, numerics."""

    kind: OperatorKind
    beta: float
    terminal: float
    side: Side = Side.LEFT
    convention: KernelConvention = KernelConvention.CONJUGACY_BETA1
    nodes_per_unit: int = 256
    grading: float = 3.0
    h_outer: float | None = None
    h_inner: float | None = None

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise DomainError(f"order must be positive, got {self.beta!r}")
        if self.kind is not OperatorKind.RL_INTEGRAL and self.beta == int(self.beta):
            raise DomainError(
                "integer-order differentiation is the iterated staircase "
                f"derivative, not a kernel operator (order {self.beta!r})"
            )
        if self.nodes_per_unit < 8:
            raise DomainError("nodes_per_unit must be at least 8")
        if not self.grading >= 1.0:
            raise DomainError("grading must be at least 1")

    @property
    def n(self) -> int:
        """Smallest integer dominating the order (equal for integer orders)."""
        return math.ceil(self.beta)


def _kernel_terms(spec: OperatorSpec, sf, order: float) -> tuple[float, float]:
    """Kernel exponent and Gamma normalization for an integral of `order`."""
    if spec.convention is KernelConvention.CONJUGACY_BETA1:
        return order - 1.0, gamma_classical(order)
    alpha = float(sf.alpha)
    return order - alpha, gamma_classical(order - alpha + 1.0)


def _node_count(spec: OperatorSpec, span: float) -> int:
    return min(4096, max(32, int(math.ceil(spec.nodes_per_unit * span))))


def _integral_u(g, spec: OperatorSpec, sf, order: float, u: float, fixed_nodes: int | None = None) -> float:
    """Product-integrated fractional integral of g in the u coordinate."""
    ua = sf.eval(spec.terminal)
    mu, norm = _kernel_terms(spec, sf, order)
    if spec.side is Side.LEFT:
        lo, hi = ua, u
        anchor = "hi"
        if hi < lo:
            raise DomainError("evaluation point precedes the left terminal")
    else:
        lo, hi = u, ua
        anchor = "lo"
        if hi < lo:
            raise DomainError("evaluation point follows the right terminal")
    if hi == lo:
        return 0.0
    cells = fixed_nodes if fixed_nodes is not None else _node_count(spec, hi - lo)
    mesh = quadrature.graded_mesh_two_sided(lo, hi, cells, spec.grading)
    return quadrature.product_integrate(g, mesh, mu, singular_at=anchor) / norm


def _forward_diff(F, u: float, h: float, n: int, direction: float) -> float:
    """Second-order one-sided difference; direction +1 forward, -1 backward."""
    s = direction
    if n == 1:
        return s * (-3.0 * F(u) + 4.0 * F(u + s * h) - F(u + 2.0 * s * h)) / (2.0 * h)
    return (
        2.0 * F(u) - 5.0 * F(u + s * h) + 4.0 * F(u + 2.0 * s * h) - F(u + 3.0 * s * h)
    ) / (h * h)


def _central_diff(F, u: float, h: float, n: int) -> float:
    if n == 1:
        return (F(u + h) - F(u - h)) / (2.0 * h)
    return (F(u + h) - 2.0 * F(u) + F(u - h)) / (h * h)


def _richardson_stencil(
    F, u: float, h: float, n: int, lo_limit: float, hi_limit: float
) -> float:
    """(4 D(h/2) - D(h)) / 3 with one-sided fallback near the domain edges."""
    if u - 1.01 * h < lo_limit:
        diff = lambda step: _forward_diff(F, u, step, n, +1.0)
    elif u + (n + 1.01) * h > hi_limit:
        diff = lambda step: _forward_diff(F, u, step, n, -1.0)
    else:
        diff = lambda step: _central_diff(F, u, step, n)
    coarse = diff(h)
    fine = diff(h / 2.0)
    value = (4.0 * fine - coarse) / 3.0
    drift = abs(fine - coarse) / 3.0
    if drift > 0.05 * max(abs(value), 1e-9):
        warnings.warn(
            f"difference stencil levels disagree by {drift:.3e} near u={u!r}; "
            "the result may be dominated by quadrature noise",
            DifferentiationNoiseWarning,
            stacklevel=3,
        )
    return value


def _derivative_u(g, spec: OperatorSpec, sf, u: float) -> float:
    """RL derivative in u: n plain derivatives of the order n - beta integral."""
    ua = sf.eval(spec.terminal)
    n = spec.n
    span = abs(u - ua)
    if span == 0.0:
        raise DomainError("derivative is not defined at the terminal itself")
    h = spec.h_outer if spec.h_outer is not None else (1e-4 if n == 1 else 1e-3)
    h = min(h, span / 4.0)
    cells = _node_count(spec, span)

    def F(w: float) -> float:
        return _integral_u(g, spec, sf, n - spec.beta, w, fixed_nodes=cells)

    if spec.side is Side.LEFT:
        value = _richardson_stencil(F, u, h, n, lo_limit=ua, hi_limit=math.inf)
    else:
        value = _richardson_stencil(F, u, h, n, lo_limit=-math.inf, hi_limit=ua)
        if n % 2 == 1:
            value = -value
    return value


def _nth_derivative(
    g, v: float, h: float, n: int, lo_limit: float = -math.inf, hi_limit: float = math.inf
) -> float:
    """Second-order n-th difference (n = 1 or 2), one-sided near the limits."""
    if v - (n + 0.01) * h < lo_limit:
        s = 1.0
    elif v + (n + 0.01) * h > hi_limit:
        s = -1.0
    else:
        if n == 1:
            return (g(v + h) - g(v - h)) / (2.0 * h)
        return (g(v + h) - 2.0 * g(v) + g(v - h)) / (h * h)
    if n == 1:
        return s * (-3.0 * g(v) + 4.0 * g(v + s * h) - g(v + 2.0 * s * h)) / (2.0 * h)
    return (
        2.0 * g(v) - 5.0 * g(v + s * h) + 4.0 * g(v + 2.0 * s * h) - g(v + 3.0 * s * h)
    ) / (h * h)


def _caputo_u(g, spec: OperatorSpec, sf, u: float) -> float:
    """Caputo derivative in u, as the RL derivative of the Taylor remainder.

    Equivalent to kernel-integrating the inner n-th derivative, but stays
    accurate when that derivative blows up at the terminal (as it does for
    solutions carrying fractional powers of the staircase): the integral
    machinery sees the bounded remainder instead of a singular derivative.
    """
    n = spec.n
    h = spec.h_inner if spec.h_inner is not None else 1e-5
    ua = sf.eval(spec.terminal)
    coeffs = [g(ua)]
    for j in range(1, n):
        if spec.side is Side.LEFT:
            coeffs.append(_nth_derivative(g, ua, h, j, lo_limit=ua))
        else:
            coeffs.append(_nth_derivative(g, ua, h, j, hi_limit=ua))

    def remainder(v: float) -> float:
        w = v - ua
        acc = g(v)
        fact = 1.0
        for j, c in enumerate(coeffs):
            if j:
                fact *= j
            acc -= c * w**j / fact
        return acc

    dspec = replace(spec, kind=OperatorKind.RL_DERIVATIVE)
    return _derivative_u(remainder, dspec, sf, u)


def _require_kind(spec: OperatorSpec, kind: OperatorKind) -> None:
    if spec.kind is not kind:
        raise DomainError(f"operator spec is {spec.kind.value}, expected {kind.value}")


def rl_integral(spec: OperatorSpec, f, sf, x) -> float:
    """Staircase RL integral of f at x, order spec.beta from spec.terminal."""
    _require_kind(spec, OperatorKind.RL_INTEGRAL)
    return _integral_u(conjugate(f, sf), spec, sf, spec.beta, sf.eval(x))


def rl_derivative(spec: OperatorSpec, f, sf, x) -> float:
    """Staircase RL derivative of f at x."""
    _require_kind(spec, OperatorKind.RL_DERIVATIVE)
    return _derivative_u(conjugate(f, sf), spec, sf, sf.eval(x))


def caputo_derivative(spec: OperatorSpec, f, sf, x) -> float:
    """Staircase Caputo derivative of f at x."""
    _require_kind(spec, OperatorKind.CAPUTO)
    return _caputo_u(conjugate(f, sf), spec, sf, sf.eval(x))


def evaluate(spec: OperatorSpec, f, sf, x) -> float:
    if spec.kind is OperatorKind.RL_INTEGRAL:
        return rl_integral(spec, f, sf, x)
    if spec.kind is OperatorKind.RL_DERIVATIVE:
        return rl_derivative(spec, f, sf, x)
    return caputo_derivative(spec, f, sf, x)


def power_rule_integral(beta: float, eta: float, sf, a, x) -> float:
    """Closed-form RL integral of (S - S(a))^eta at x."""
    if not eta > -1.0:
        raise DomainError(f"power exponent must exceed -1, got {eta!r}")
    if not beta > 0.0:
        raise DomainError(f"order must be positive, got {beta!r}")
    du = sf.eval(x) - sf.eval(a)
    if du < 0.0:
        raise DomainError("evaluation point precedes the terminal")
    coeff = math.exp(math.lgamma(eta + 1.0) - math.lgamma(eta + beta + 1.0))
    return coeff * du ** (eta + beta)


def power_rule_derivative(beta: float, eta: float, sf, a, x) -> float:
    """Closed-form RL derivative of (S - S(a))^eta at x; 0 on Gamma poles."""
    if not eta > -1.0:
        raise DomainError(f"power exponent must exceed -1, got {eta!r}")
    if not beta > 0.0:
        raise DomainError(f"order must be positive, got {beta!r}")
    du = sf.eval(x) - sf.eval(a)
    if du < 0.0:
        raise DomainError("evaluation point precedes the terminal")
    r = rgamma(eta - beta + 1.0)
    if r == 0.0:
        return 0.0
    if du == 0.0 and eta < beta:
        raise DomainError("derivative of this power diverges at the terminal")
    return math.gamma(eta + 1.0) * r * du ** (eta - beta)


class CompositionKind(enum.Enum):
    RL_LEFT = "rl-left"
    RL_RIGHT = "rl-right"
    CAPUTO_LEFT = "caputo-left"
    CAPUTO_RIGHT = "caputo-right"


def _rl_boundary_terms(g, spec: OperatorSpec, sf, w: float) -> float:
    """RL composition corrections at staircase distance w from the terminal.

    Term j carries the limit of the order beta - j derivative at the
    terminal (an integral when beta - j < 0), divided by Gamma(beta + 1 - j).
    """
    beta = spec.beta
    ua = sf.eval(spec.terminal)
    sgn = 1.0 if spec.side is Side.LEFT else -1.0
    probe = ua + sgn * DELTA_BOUNDARY
    total = 0.0
    for j in range(1, spec.n + 1):
        order_j = beta - j
        if order_j > 0.0:
            dspec = replace(
                spec,
                beta=order_j,
                kind=OperatorKind.RL_DERIVATIVE,
                h_outer=DELTA_BOUNDARY / 8.0,
            )
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DifferentiationNoiseWarning)
                limit = _derivative_u(g, dspec, sf, probe)
        elif order_j == 0.0:
            limit = g(probe)
        else:
            limit = _integral_u(g, spec, sf, -order_j, probe)
        total += limit * rgamma(beta - j + 1.0) * w ** (beta - j)
    return total


def _caputo_boundary_terms(g, spec: OperatorSpec, sf, w: float) -> float:
    """Caputo composition corrections: the Taylor head at the terminal.

    Degrees 0 through n - 1, with the sign-adjusted derivative on the right
    side (the Taylor expansion runs in the inward direction).
    """
    ua = sf.eval(spec.terminal)
    h = 1e-5
    if spec.side is Side.LEFT:
        probe = ua + DELTA_BOUNDARY
        total = g(probe)
        for j in range(1, spec.n):
            d = _nth_derivative(g, probe, h, j, lo_limit=ua)
            total += d / math.factorial(j) * w ** j
    else:
        probe = ua - DELTA_BOUNDARY
        total = g(probe)
        for j in range(1, spec.n):
            d = _nth_derivative(g, probe, h, j, hi_limit=ua)
            total += (-1.0) ** j * d / math.factorial(j) * w ** j
    return total


def composition_residual(
    kind: CompositionKind,
    f,
    beta: float,
    sf,
    interval: tuple[float, float],
    grid=None,
    convention: KernelConvention = KernelConvention.CONJUGACY_BETA1,
    nodes_per_unit: int = 256,
    inner_grid: int = 161,
) -> float:
    """Max defect of integral-after-derivative against its identity.

    The inner derivative is sampled once on a grid clustered toward the
    terminal (where it is generically singular) and interpolated, so the
    outer integral does not re-run the derivative machinery at every
    quadrature node. Returns the sup of the absolute residual over the grid.
    """
    a, b = float(interval[0]), float(interval[1])
    left = kind in (CompositionKind.RL_LEFT, CompositionKind.CAPUTO_LEFT)
    caputo = kind in (CompositionKind.CAPUTO_LEFT, CompositionKind.CAPUTO_RIGHT)
    side = Side.LEFT if left else Side.RIGHT
    terminal = a if left else b
    spec = OperatorSpec(
        kind=OperatorKind.CAPUTO if caputo else OperatorKind.RL_DERIVATIVE,
        beta=beta,
        terminal=terminal,
        side=side,
        convention=convention,
        nodes_per_unit=nodes_per_unit,
    )
    g = conjugate(f, sf)
    ua = sf.eval(a)
    ub = sf.eval(b)
    if not ub > ua:
        raise DomainError("interval has empty staircase measure")

    if grid is None:
        us = np.linspace(ua + 0.1 * (ub - ua), ub, 16) if left else np.linspace(
            ua, ub - 0.1 * (ub - ua), 16
        )
    else:
        us = np.array([sf.eval(x) for x in grid], dtype=float)
        uterm = ua if left else ub
        if np.any(np.abs(us - uterm) < 1e-6):
            raise DomainError("grid points must keep clear of the terminal")

    # Sample the inner operator on a grid clustered at the terminal.
    pad = 8.0 * DELTA_BOUNDARY
    frac = (np.arange(inner_grid) / (inner_grid - 1.0)) ** 4.0
    if left:
        ugrid = (ua + pad) + (float(us.max()) - ua - pad) * frac
    else:
        ugrid = np.sort((ub - pad) - (ub - pad - float(us.min())) * frac)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DifferentiationNoiseWarning)
        if caputo:
            inner_vals = np.array([_caputo_u(g, spec, sf, float(w)) for w in ugrid])
        else:
            inner_vals = np.array([_derivative_u(g, spec, sf, float(w)) for w in ugrid])
    if not np.isfinite(inner_vals).all():
        raise DomainError("inner operator produced non-finite samples")

    # The RL derivative carries a g(terminal) * w^(-beta) blowup at the
    # terminal that defeats linear interpolation; peel it off and add back
    # its exact recomposition, which is g(terminal) itself (Beta identity,
    # exponents beta-1 and -beta integrate to Gamma(beta)Gamma(1-beta)).
    head_coeff = 0.0
    uterm = ua if left else ub
    if not caputo and spec.n == 1 and convention is KernelConvention.CONJUGACY_BETA1:
        g_term = g(uterm)
        if math.isfinite(g_term):
            head_coeff = g_term * rgamma(1.0 - beta)
            inner_vals = inner_vals - head_coeff * np.abs(uterm - ugrid) ** -beta
    inner_fn = lambda v: float(np.interp(v, ugrid, inner_vals))

    ispec = replace(spec, kind=OperatorKind.RL_INTEGRAL)
    worst = 0.0
    for u in us:
        u = float(u)
        recomposed = _integral_u(inner_fn, ispec, sf, beta, u)
        if head_coeff != 0.0:
            recomposed += head_coeff * gamma_classical(1.0 - beta)
        w = abs(u - (ua if left else ub))
        if caputo:
            expected = g(u) - _caputo_boundary_terms(g, spec, sf, w)
        else:
            expected = g(u) - _rl_boundary_terms(g, spec, sf, w)
        worst = max(worst, abs(recomposed - expected))
    return worst
