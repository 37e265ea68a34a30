"""The middle-third Cantor set and its staircase function, in exact arithmetic.

The staircase (the classical devil's staircase) is evaluated by a digit
transcription: ternary digits of the argument are copied to binary digits of
the value, ``0 -> 0`` and ``2 -> 1``, stopping at the first ternary ``1``
(which is emitted as a final binary ``1``).  The quantile (a measurable right
inverse of the staircase) runs the same transcription backwards, binary to
ternary.  All digit work is done on exact integers, so results are correct to
the configured digit depth for any rational argument.  Floats are taken at
their exact binary value; pass :class:`fractions.Fraction` for points such as
1/3 that binary floats cannot represent.

Outside the unit interval the staircase is extended, by default, through the
self-similar tiling ``S(x + 1) = S(x) + 1`` for ``x >= 0`` and the odd
reflection ``S(-x) = -S(x)``, which is the extension the transform and
special-function modules rely on.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exceptions import DomainError

#: Hausdorff dimension of the middle-third Cantor set, ln 2 / ln 3.
ALPHA_CANTOR = math.log(2.0) / math.log(3.0)


class ExtensionRule(enum.Enum):
    """How staircase evaluation treats arguments outside [0, 1]."""

    UNIT_INTERVAL = "unit-interval"
    SELF_SIMILAR_TILING = "self-similar-tiling"


@dataclass(frozen=True)
class CantorSpec:
    """Construction parameters: digit depth and extension rule.

    ``digit_depth`` bounds both the ternary digits examined and the binary
    digits emitted, so every staircase value carries a one-sided truncation
    error below ``2**-digit_depth``.
    """

    digit_depth: int = 53
    extension_rule: ExtensionRule = ExtensionRule.SELF_SIMILAR_TILING

    def __post_init__(self) -> None:
        if not isinstance(self.digit_depth, int) or self.digit_depth < 1:
            raise DomainError(f"digit_depth must be a positive integer, got {self.digit_depth!r}")


@lru_cache(maxsize=None)
def _pow3(n: int) -> int:
    return 3**n


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Rational):
        return Fraction(x)
    f = float(x)
    if not math.isfinite(f):
        raise DomainError(f"argument is not finite: {x!r}")
    return Fraction(*f.as_integer_ratio())


def _unit_staircase_scaled(num: int, den: int, depth: int) -> int:
    """floor(S(num/den) * 2**depth) for 0 <= num < den.

    Transcribes ternary digits to binary ones; the first ternary 1 is emitted
    and terminates the expansion, matching the staircase being constant on
    the removed middle-third gaps.
    """
    acc = 0
    if den & (den - 1) == 0:
        # terminating binary expansion: digit extraction is shift/mask
        k = den.bit_length() - 1
        mask = den - 1
        for i in range(depth):
            num *= 3
            d = num >> k
            num &= mask
            if d == 1:
                return (acc << (depth - i)) | (1 << (depth - i - 1))
            acc = (acc << 1) | (d >> 1)
            if not num:
                return acc << (depth - i - 1)
        return acc
    for i in range(depth):
        num *= 3
        d, num = divmod(num, den)
        if d == 1:
            return (acc << (depth - i)) | (1 << (depth - i - 1))
        acc = (acc << 1) | (d >> 1)
        if not num:
            return acc << (depth - i - 1)
    return acc


def _unit_membership(num: int, den: int, depth: int) -> bool:
    """Membership in the depth-digit prefractal of num/den in [0, 1).

    A ternary 1 disqualifies unless the expansion terminates right there, in
    which case the standard rewrite ...1 = ...0222... applies and the point
    is a gap endpoint belonging to the set.
    """
    if den & (den - 1) == 0:
        k = den.bit_length() - 1
        mask = den - 1
        for _ in range(depth):
            num *= 3
            d = num >> k
            num &= mask
            if d == 1:
                return num == 0
            if not num:
                return True
        return True
    for _ in range(depth):
        num *= 3
        d, num = divmod(num, den)
        if d == 1:
            return num == 0
        if not num:
            return True
    return True


def _unit_quantile_scaled(num: int, den: int, depth: int) -> int:
    """quantile(num/den) * 3**depth for 0 <= num/den < 1.

    Binary digits of the argument become ternary digits {0, 2} of the result.
    Dyadic arguments use their terminating binary expansion, which selects the
    right endpoint of the corresponding staircase plateau.
    """
    acc = 0
    for i in range(depth):
        num *= 2
        if num >= den:
            acc = acc * 3 + 2
            num -= den
        else:
            acc *= 3
        if not num:
            return acc * _pow3(depth - i - 1)
    return acc


@dataclass(frozen=True)
class StaircaseFn:
    """The Cantor staircase together with its quantile and membership tests."""

    spec: CantorSpec = field(default_factory=CantorSpec)
    alpha: float = ALPHA_CANTOR

    def __post_init__(self) -> None:
        if abs(self.alpha - ALPHA_CANTOR) > 1e-12:
            raise DomainError(
                "the triadic staircase has dimension ln 2/ln 3; " f"got alpha={self.alpha!r}"
            )

    # -- staircase ---------------------------------------------------------

    def eval_exact(self, x) -> Fraction:
        fr = _as_fraction(x)
        rule = self.spec.extension_rule
        depth = self.spec.digit_depth
        if rule is ExtensionRule.UNIT_INTERVAL:
            if fr < 0 or fr > 1:
                raise DomainError(f"argument {x!r} outside [0, 1] under the unit-interval rule")
        if fr < 0:
            return -self.eval_exact(-fr)
        n, frac = divmod(fr.numerator, fr.denominator)
        scaled = _unit_staircase_scaled(frac, fr.denominator, depth)
        return n + Fraction(scaled, 1 << depth)

    def eval(self, x) -> float:
        return float(self.eval_exact(x))

    __call__ = eval

    # -- quantile ----------------------------------------------------------

    def quantile_exact(self, u) -> Fraction:
        fr = _as_fraction(u)
        rule = self.spec.extension_rule
        depth = self.spec.digit_depth
        if rule is ExtensionRule.UNIT_INTERVAL:
            if fr < 0 or fr > 1:
                raise DomainError(f"quantile argument {u!r} outside [0, 1] under the unit-interval rule")
        if fr < 0:
            return -self.quantile_exact(-fr)
        n, frac = divmod(fr.numerator, fr.denominator)
        scaled = _unit_quantile_scaled(frac, fr.denominator, depth)
        return n + Fraction(scaled, _pow3(depth))

    def quantile(self, u) -> float:
        return float(self.quantile_exact(u))

    # -- membership --------------------------------------------------------

    def membership(self, x) -> bool:
        fr = _as_fraction(x)
        rule = self.spec.extension_rule
        if rule is ExtensionRule.UNIT_INTERVAL:
            if fr < 0 or fr > 1:
                raise DomainError(f"argument {x!r} outside [0, 1] under the unit-interval rule")
        if fr < 0:
            return self.membership(-fr)
        n, frac = divmod(fr.numerator, fr.denominator)
        return _unit_membership(frac, fr.denominator, self.spec.digit_depth)


@dataclass(frozen=True)
class IdentityMap:
    """Degenerate coordinate map S(x) = x.

    Substituting it for the staircase collapses every conjugated operator to
    its classical counterpart, which is how the alpha -> 1 limits are checked.
    """

    alpha: float = 1.0

    def eval_exact(self, x) -> Fraction:
        return _as_fraction(x)

    def eval(self, x) -> float:
        return float(x)

    __call__ = eval

    def quantile_exact(self, u) -> float:
        return float(u)

    def quantile(self, u) -> float:
        return float(u)

    def membership(self, x) -> bool:
        return True


def cantor_eval(sf: StaircaseFn, x) -> float:
    """Staircase value S(x), truncated (one-sided) at the digit depth."""
    return sf.eval(x)


def cantor_quantile(sf: StaircaseFn, u) -> float:
    """A Cantor-set point t with S(t) = u, as a float.

    The exact rational representative is available from
    ``sf.quantile_exact(u)``; round-tripping through this float loses digits
    past about 2**-33 because the ternary expansion is re-read from a binary
    approximation.
    """
    return sf.quantile(u)


def cantor_membership(sf: StaircaseFn, x) -> bool:
    """Membership of x in the depth-digit prefractal of the Cantor set."""
    return sf.membership(x)


def prefractal_intervals(depth: int) -> list[tuple[Fraction, Fraction]]:
    """Closed intervals of the depth-th prefractal iterate, left to right."""
    if not isinstance(depth, int) or depth < 0 or depth > 20:
        raise DomainError(f"prefractal depth must be an integer in [0, 20], got {depth!r}")
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for a, b in intervals:
            w = (b - a) / 3
            nxt.append((a, a + w))
            nxt.append((b - w, b))
        intervals = nxt
    return intervals
