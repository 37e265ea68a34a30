"""Quadrature kernels used by the conjugated integrals.

Smooth integrands go through composite Gauss-Legendre panels aligned to unit
intervals. Endpoint-singular integrands (integrable power singularities) go
through tanh-sinh, whose nodes never touch the endpoints. Weakly singular
convolution kernels are integrated by product rules: the integrand is
interpolated piecewise-linearly on a (possibly graded) mesh and the kernel
moments are taken exactly.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_edges(lo: float, hi: float) -> list[float]:
    # split at the integers strictly between lo and hi
    edges = [lo]
    k = math.floor(lo) + 1
    while k < hi:
        if k > lo:
            edges.append(float(k))
        k += 1
    edges.append(hi)
    return edges


def gauss_composite(g, lo: float, hi: float, nodes: int = 64) -> float:
    """Composite Gauss-Legendre over unit-aligned panels, `nodes` points each."""
    if hi == lo:
        return 0.0
    xg, wg = _leggauss(max(2, int(nodes)))
    total = 0.0
    edges = _panel_edges(lo, hi)
    for a, b in zip(edges[:-1], edges[1:]):
        c, m = 0.5 * (b - a), 0.5 * (a + b)
        vals = np.array([g(m + c * t) for t in xg], dtype=float)
        if not np.isfinite(vals).all():
            raise ValueError("integrand returned a non-finite value")
        total += c * float(wg @ vals)
    return total


def trapezoid_composite(g, lo: float, hi: float, nodes: int = 64) -> float:
    if hi == lo:
        return 0.0
    n = max(2, math.ceil(nodes * (hi - lo)))
    xs = np.linspace(lo, hi, n + 1)
    vals = np.array([g(x) for x in xs], dtype=float)
    if not np.isfinite(vals).all():
        raise ValueError("integrand returned a non-finite value")
    return float(np.trapezoid(vals, xs))


def tanh_sinh(g, lo: float, hi: float, tol: float = 1e-12, max_level: int = 11) -> float:
    """Double-exponential quadrature on [lo, hi].

    Handles integrable endpoint singularities. Nodes approach each endpoint
    until float resolution runs out (down to denormal offsets when the
    endpoint is 0.0); each side stops independently, so a singular side keeps
    resolving after the smooth side saturates. The iteration stops once two
    levels agree to `tol` (relative).
    """
    c = 0.5 * (hi - lo)
    if c == 0.0:
        return 0.0
    mid = 0.5 * (lo + hi)
    hp = 0.5 * math.pi
    best = None
    for level in range(3, max_level + 1):
        h = 4.0 / (1 << level)
        s = 0.0
        k = 0
        alive_hi = True
        alive_lo = True
        while k <= 100_000:
            t = k * h
            a = hp * math.sinh(t)
            if a < 300.0:
                w = hp * math.cosh(t) / math.cosh(a) ** 2
                dist = 2.0 * c / (math.exp(2.0 * a) + 1.0)
            else:
                damp = math.exp(-2.0 * a)
                w = 2.0 * math.pi * math.cosh(t) * damp
                dist = 2.0 * c * damp
            if k == 0:
                v = g(mid)
                if not math.isfinite(v):
                    raise ValueError("integrand returned a non-finite value")
                s += w * v
                k += 1
                continue
            if dist <= 0.0 or w <= 0.0:
                break
            inc = 0.0
            resolved = False
            xp = hi - dist
            if alive_hi and xp < hi:
                # an overflow this deep means doubles cannot hold g there;
                # freeze that side and keep the other going
                try:
                    vp = g(xp)
                except OverflowError:
                    alive_hi = False
                else:
                    if not math.isfinite(vp):
                        raise ValueError("integrand returned a non-finite value")
                    inc += w * vp
                    resolved = True
            xm = lo + dist
            if alive_lo and xm > lo:
                try:
                    vm = g(xm)
                except OverflowError:
                    alive_lo = False
                else:
                    if not math.isfinite(vm):
                        raise ValueError("integrand returned a non-finite value")
                    inc += w * vm
                    resolved = True
            if not resolved:
                break
            s += inc
            if t > 3.0 and abs(inc) <= 1e-18 * max(1.0, abs(s)):
                break
            k += 1
        val = c * h * s
        if best is not None and abs(val - best) <= tol * max(1.0, abs(val)):
            return val
        best = val
    return float(best)


# -- product integration against weakly singular kernels ---------------------


def graded_mesh(lo: float, hi: float, n: int, grading: float = 3.0) -> np.ndarray:
    """Ascending mesh of n cells on [lo, hi], refined toward lo for grading > 1."""
    j = np.arange(n + 1, dtype=float) / n
    return lo + (hi - lo) * j**grading


def graded_mesh_two_sided(lo: float, hi: float, n: int, grading: float = 3.0) -> np.ndarray:
    """Mesh of ~n cells refined toward both endpoints.

    Kernel singularities sit at one endpoint and integrand curvature usually
    concentrates at the other, so both ends get clustered cells.
    """
    half = max(1, n // 2)
    mid = 0.5 * (lo + hi)
    jl = (np.arange(half + 1, dtype=float) / half) ** grading
    left = lo + (mid - lo) * jl
    jr = (np.arange(half, dtype=float) / half)[::-1] ** grading
    right = hi - (hi - mid) * jr
    return np.concatenate([left, right])


def product_weights_left(mesh: np.ndarray, mu: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Moment data for ∫ g(v) (X - v)^mu dv with X = mesh[-1], mu > -1.

    Returns (M0, M1, h) per cell: the kernel mass, the kernel first moment
    about the cell's left node, and the cell widths. A piecewise-linear g is
    then integrated exactly as g_left*(M0 - M1/h) + g_right*(M1/h).
    """
    X = mesh[-1]
    w = X - mesh
    m1, m2 = mu + 1.0, mu + 2.0
    pw1 = np.power(w, m1)
    pw2 = np.power(w, m2)
    M0 = (pw1[:-1] - pw1[1:]) / m1
    M1 = w[:-1] * M0 - (pw2[:-1] - pw2[1:]) / m2
    return M0, M1, np.diff(mesh)


def product_weights_right(mesh: np.ndarray, mu: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Moment data for ∫ g(v) (v - X)^mu dv with X = mesh[0], mu > -1."""
    X = mesh[0]
    w = mesh - X
    m1, m2 = mu + 1.0, mu + 2.0
    pw1 = np.power(w, m1)
    pw2 = np.power(w, m2)
    M0 = (pw1[1:] - pw1[:-1]) / m1
    M1 = (pw2[1:] - pw2[:-1]) / m2 - w[:-1] * M0
    return M0, M1, np.diff(mesh)


def product_integrate(g, mesh: np.ndarray, mu: float, singular_at: str) -> float:
    """∫ g(v) k(v) dv over the mesh span, k(v) = (X - v)^mu or (v - X)^mu.

    ``singular_at`` names the kernel anchor: "hi" integrates against
    (mesh[-1] - v)^mu, "lo" against (v - mesh[0])^mu. Non-finite g at the far
    endpoint (a blow-up of the integrand away from the kernel anchor) demotes
    that single cell to a midpoint rule.
    """
    if singular_at == "hi":
        M0, M1, h = product_weights_left(mesh, mu)
    elif singular_at == "lo":
        M0, M1, h = product_weights_right(mesh, mu)
    else:
        raise ValueError(f"singular_at must be 'lo' or 'hi', got {singular_at!r}")
    def _endpoint(v: float) -> float:
        # A blow-up at the very edge shows up as inf/nan or as a raised
        # arithmetic error; both demote the edge cell to the midpoint rule.
        try:
            return float(g(v))
        except (ArithmeticError, ValueError):
            return math.nan

    vals = np.empty(len(mesh), dtype=float)
    vals[0] = _endpoint(mesh[0])
    vals[-1] = _endpoint(mesh[-1])
    vals[1:-1] = [g(v) for v in mesh[1:-1]]
    contrib = vals[:-1] * (M0 - M1 / h) + vals[1:] * (M1 / h)
    if not math.isfinite(vals[0]):
        contrib[0] = g(0.5 * (mesh[0] + mesh[1])) * M0[0]
    if not math.isfinite(vals[-1]):
        contrib[-1] = g(0.5 * (mesh[-2] + mesh[-1])) * M0[-1]
    if not np.isfinite(contrib).all():
        raise ValueError("integrand returned a non-finite value inside the mesh")
    return float(contrib.sum())
