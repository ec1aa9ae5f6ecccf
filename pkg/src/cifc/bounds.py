"""Closed-form sum-rate outer bounds for the 3-user LDA and the regime map.

All regime classification and normalized bounds use exact rationals so that
boundary cases (alpha = 1, beta = alpha, 3*alpha + beta = 2) are decided
deterministically.  Floats only appear at the presentation layer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .lda import LdaChannel

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class BoundReport:
    """A named bound value plus the sub-expression that attained it."""

    name: str
    value: Fraction
    binding: str

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound values are nonnegative")


class RegimeKind(enum.Enum):
    EQUAL_AND_ACHIEVABLE = "EqualAndAchievable"
    OUTER_BOUNDS_COINCIDE = "OuterBoundsCoincideAchievabilityOpen"
    OPEN = "Open"


@dataclass(frozen=True)
class RegimeLabel:
    kind: RegimeKind
    trigger: str


@dataclass(frozen=True)
class SymLdaParams:
    """Symmetric integer exponents: direct n_d, cross n_i, cognitive n_c, own n_33."""

    n_d: int
    n_i: int
    n_c: int
    n_33: int

    def __post_init__(self):
        if self.n_d <= 0:
            raise ValueError("direct gain n_d must be positive")
        if min(self.n_i, self.n_c, self.n_33) < 0:
            raise ValueError("gains must be nonnegative")

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.n_i, self.n_d)

    @property
    def beta(self) -> Fraction:
        return Fraction(self.n_c, self.n_d)

    @property
    def n33_condition(self) -> bool:
        """Whether every own-link level of the cognitive user is overheard."""
        return self.n_33 <= self.n_c

    def to_channel(self) -> LdaChannel:
        return LdaChannel.symmetric(self.n_d, self.n_i, self.n_c, self.n_33)


def pos(x: Rational) -> Rational:
    """[x]^+ on exact numbers."""
    return x if x > 0 else type(x)(0)


def f_term(c: Rational, d: Rational, a: Rational, b: Rational) -> Rational:
    """max{c+b, a+d} - max{a, b}, collapsing to max{a,b,c,d} - max{a,b} on ties.

    The tie branch applies exactly when c - d = a - b.  Defined for
    nonnegative integers or rationals; the result is always >= 0.
    """
    if min(a, b, c, d) < 0:
        raise ValueError("f_term arguments must be nonnegative")
    if c - d == a - b:
        return max(a, b, c, d) - max(a, b)
    return max(c + b, a + d) - max(a, b)


def cms_sum_outer(channel: LdaChannel) -> BoundReport:
    """Sum-rate outer bound for the 3-user channel under cumulative sharing.

    Value = max{n11, n12, n13} + f_term(n22, n23 | n12, n13)
          + [n33 - max{n13, n23}]^+, exact in bits per channel use.
    """
    if channel.K != 3:
        raise ValueError("closed-form sum bound is only available for K = 3")
    n = channel.gain
    t1 = max(n(1, 1), n(1, 2), n(1, 3))
    t2 = f_term(n(2, 2), n(2, 3), n(1, 2), n(1, 3))
    t3 = pos(n(3, 3) - max(n(1, 3), n(2, 3)))
    return BoundReport("cms_sum_outer", Fraction(t1 + t2 + t3),
                       f"rx1_max={t1} f={t2} own_excess={t3}")


def sym_cms_sum_outer(alpha: Rational, beta: Rational) -> BoundReport:
    """Normalized (by n_d) two-user sum bound on the symmetric channel.

    Assumes the own-link condition n_33 <= max{n13, n23} holds, so the
    excess term vanishes and only r_1 + r_2 is bounded.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    if alpha == 1:
        return BoundReport("sym_cms_sum_outer", max(beta, Fraction(1)), "alpha=1")
    value = max(alpha, beta, Fraction(1)) + max(Fraction(1), alpha) + beta - max(alpha, beta)
    return BoundReport("sym_cms_sum_outer", value, "alpha!=1")


def ifc_cr_sum_outer(alpha: Rational, beta: Rational) -> BoundReport:
    """Normalized sum bound for two primaries aided by a cognitive relay."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    one = Fraction(1)
    candidates = [
        ("a", pos(one - max(beta, alpha)) + beta + max(one, alpha)),
        ("b", 2 * max(one - alpha, alpha, beta) + 2 * min(alpha, beta)),
    ]
    if alpha == 1:
        candidates.append(("c", max(one, beta)))
    binding, value = min(candidates, key=lambda kv: kv[1])
    return BoundReport("ifc_cr_sum_outer", value, binding)


def bounds_agree(alpha: Rational, beta: Rational) -> bool:
    """Whether the cumulative-sharing bound is no larger than the relay bound."""
    return sym_cms_sum_outer(alpha, beta).value <= ifc_cr_sum_outer(alpha, beta).value


def classify_regime(alpha: Rational, beta: Rational, n33_condition: bool) -> RegimeLabel:
    """Classify a normalized gain point (closed regions on every boundary).

    EqualAndAchievable: own-link condition holds and alpha >= 1 or beta >= alpha;
    a relay-only scheme meets the cumulative-sharing outer bound exactly.
    OuterBoundsCoincideAchievabilityOpen: own-link condition holds,
    beta < alpha < 1 and 3*alpha + beta >= 2; the two outer bounds agree but
    no matching scheme is known.  Everything else is Open.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    if not n33_condition:
        return RegimeLabel(RegimeKind.OPEN, "own-link condition fails")
    if alpha >= 1:
        return RegimeLabel(RegimeKind.EQUAL_AND_ACHIEVABLE, "alpha>=1")
    if beta >= alpha:
        return RegimeLabel(RegimeKind.EQUAL_AND_ACHIEVABLE, "beta>=alpha")
    if 3 * alpha + beta >= 2:
        return RegimeLabel(RegimeKind.OUTER_BOUNDS_COINCIDE, "2<=3*alpha+beta")
    return RegimeLabel(RegimeKind.OPEN, "3*alpha+beta<2")


def regime_grid(alpha_max: Fraction, beta_max: Fraction,
                step: Fraction) -> Iterator[tuple[Fraction, Fraction, RegimeLabel, Fraction, Fraction]]:
    """Alpha-major sweep yielding (alpha, beta, label, cms bound, relay bound)."""
    if step <= 0:
        raise ValueError("step must be positive")
    a = Fraction(0)
    while a <= alpha_max:
        b = Fraction(0)
        while b <= beta_max:
            label = classify_regime(a, b, True)
            yield a, b, label, sym_cms_sum_outer(a, b).value, ifc_cr_sum_outer(a, b).value
            b += step
        a += step
