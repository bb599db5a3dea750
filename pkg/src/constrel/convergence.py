"""Convergence classification and depth planning for canonical fractions.

The classifier reads the asymptotics of the term function f and of g = 1 + 4f
from their reduced rational forms and maps them to a convergence regime with a
leading-order error model (big-O constants taken as 1, an empirically good
heuristic).  Predicted errors are reported in decimal digits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .polynomials import RationalFunc


class Regime(enum.Enum):
    FACTORIAL = 'factorial'            # error ~ (depth!)**k, k < 0
    EXPONENTIAL = 'exponential'        # error ~ |(1+sqrt(C))/(1-sqrt(C))|**-depth
    SUBEXPONENTIAL = 'subexponential'  # error ~ exp(-4*sqrt(depth/C))
    POLYNOMIAL = 'polynomial'          # error ~ depth**m for some unknown m < 0
    DIVERGENT = 'divergent'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class ConvergenceClass:
    kind: Regime
    C: Fraction | None = None
    k: Fraction | None = None

    def __post_init__(self):
        need = {Regime.FACTORIAL: ('k',), Regime.EXPONENTIAL: ('C',),
                Regime.SUBEXPONENTIAL: ('C', 'k'), Regime.POLYNOMIAL: ('k',),
                Regime.DIVERGENT: (), Regime.UNKNOWN: ()}[self.kind]
        for name in ('C', 'k'):
            have = getattr(self, name) is not None
            if have != (name in need):
                raise ValueError(f'{self.kind.value} takes parameters {need}')

    @property
    def converges(self) -> bool:
        return self.kind not in (Regime.DIVERGENT, Regime.UNKNOWN)

    def describe(self) -> str:
        if self.kind is Regime.FACTORIAL:
            return f'factorial-like, error ~ (depth!)^{self.k}'
        if self.kind is Regime.EXPONENTIAL:
            return f'exponential-like with C = {self.C}'
        if self.kind is Regime.SUBEXPONENTIAL:
            return f'sub-exponential with C = {self.C}, k = {self.k}'
        if self.kind is Regime.POLYNOMIAL:
            return 'polynomial-like, unknown polynomial rate'
        if self.kind is Regime.DIVERGENT:
            return 'expected not to converge'
        return 'unknown convergence behaviour'


def classify(f: RationalFunc) -> ConvergenceClass:
    """Map the asymptotics of f (and of 1 + 4f) to a convergence regime.

    f -> 0 gives the factorial regime directly.  Otherwise the leading term
    C*n**k of g = 1 + 4f decides: k = 0 is exponential in C (complex rate for
    C < 0 is unclassified), k = 1 with positive C is sub-exponential, k in
    (1, 2] or k < 0 is polynomial with an unknown rate, and faster growth
    does not converge.
    """
    if f.is_zero:
        raise ValueError('zero function')
    k = f.degree_diff
    if k < 0:
        return ConvergenceClass(Regime.FACTORIAL, k=Fraction(k))
    g = f * 4 + 1
    if g.is_zero:
        # 1 + 4f identically zero: constant C = 0 case of the k = 0 branch
        return ConvergenceClass(Regime.UNKNOWN)
    kg = g.degree_diff
    Cg = g.leading_ratio
    if kg == 0:
        if Cg == 1:
            # leading terms cancel in g - 1 = 4f only when f -> 0, which the
            # factorial branch already took; re-derive from 4f defensively
            kg, Cg = f.degree_diff, 4 * f.leading_ratio
            if kg >= 1:
                return ConvergenceClass(Regime.SUBEXPONENTIAL, C=Cg, k=Fraction(kg))
            return ConvergenceClass(Regime.POLYNOMIAL, k=Fraction(kg))
        if Cg > 0:
            return ConvergenceClass(Regime.EXPONENTIAL, C=Cg)
        return ConvergenceClass(Regime.UNKNOWN)
    if kg == 1:
        if Cg > 0:
            return ConvergenceClass(Regime.SUBEXPONENTIAL, C=Cg, k=Fraction(kg))
        return ConvergenceClass(Regime.UNKNOWN)
    if kg == 2 or kg < 0:
        return ConvergenceClass(Regime.POLYNOMIAL, k=Fraction(kg))
    return ConvergenceClass(Regime.DIVERGENT)


def predict_error_digits(cls: ConvergenceClass, depth: int) -> int | None:
    """Decimal digits predicted correct at `depth`; None when no model exists."""
    if depth < 1:
        raise ValueError('depth must be positive')
    with mp.workprec(80):
        if cls.kind is Regime.FACTORIAL:
            log10_fact = mp.loggamma(mp.mpf(depth) + 1) / mp.log(10)
            k = mp.mpf(cls.k.numerator) / cls.k.denominator
            return int(mp.floor(-k * log10_fact))
        if cls.kind is Regime.EXPONENTIAL:
            c = mp.sqrt(mp.mpf(cls.C.numerator) / cls.C.denominator)
            rate = abs((1 + c) / (1 - c))
            return int(mp.floor(depth * mp.log10(rate)))
        if cls.kind is Regime.SUBEXPONENTIAL:
            c = mp.mpf(cls.C.numerator) / cls.C.denominator
            return int(mp.floor(4 * mp.sqrt(depth / c) * mp.log10(mp.e)))
    return None


def plan_depth(cls: ConvergenceClass, target_decimal_digits: int) -> int | None:
    """Minimal depth predicted to reach the target digits; None if unplannable."""
    if target_decimal_digits < 1:
        raise ValueError('target must be positive')
    first = predict_error_digits(cls, 1)
    if first is None:
        return None
    if first >= target_decimal_digits:
        return 1
    hi = 2
    while predict_error_digits(cls, hi) < target_decimal_digits:
        hi *= 2
        if hi > 1 << 48:
            return None
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if predict_error_digits(cls, mid) >= target_decimal_digits:
            hi = mid
        else:
            lo = mid
    return hi if predict_error_digits(cls, hi) >= target_decimal_digits else None
