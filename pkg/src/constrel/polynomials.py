"""Integer polynomials in one variable and their rational-function quotients.

Coefficient lists are stored lowest degree first, so ``coeffs[k]`` multiplies
``n**k`` and the zero polynomial is the empty tuple.  sympy is used only at the
edges (parsing infix text, polynomial gcd, rational root extraction); all
arithmetic on coefficient lists is done directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import sympy

_N = sympy.Symbol('n')


def _strip(coeffs) -> tuple:
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _strip(self.coeffs))

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError('zero polynomial has no leading coefficient')
        return self.coeffs[-1]

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.coeffs), 0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: 'IntPoly') -> 'IntPoly':
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> 'IntPoly':
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: 'IntPoly') -> 'IntPoly':
        return self + (-other)

    def __mul__(self, other: 'IntPoly') -> 'IntPoly':
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def scaled(self, k: int) -> 'IntPoly':
        return IntPoly([c * k for c in self.coeffs])

    def shifted(self, k: int) -> 'IntPoly':
        """Coefficients of p(n + k)."""
        if k == 0 or self.is_zero:
            return self
        out = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            # c * (n + k)**i
            for j in range(i + 1):
                out[j] += c * math.comb(i, j) * k ** (i - j)
        return IntPoly(out)

    def integer_roots(self) -> list:
        """All integer roots, ascending (with multiplicity collapsed)."""
        if self.is_zero:
            raise ValueError('every integer is a root of the zero polynomial')
        poly = sympy.Poly(list(reversed(self.coeffs)), _N)
        roots = []
        for r in poly.ground_roots():
            q = sympy.Rational(r)
            if q.is_integer:
                roots.append(int(q))
        return sorted(roots)

    def to_text(self) -> str:
        if self.is_zero:
            return '0'
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mag = '' if abs(c) == 1 else f'{abs(c)}*'
                body = f'{mag}n' if i == 1 else f'{mag}n^{i}'
            terms.append(('-' if c < 0 else '+', body))
        sign, first = terms[0]
        text = ('-' if sign == '-' else '') + first
        for sign, body in terms[1:]:
            text += f' {sign} {body}'
        return text


def _poly_from_sympy(p: sympy.Poly) -> tuple:
    """(IntPoly, denominator) with the lcm of coefficient denominators cleared."""
    coeffs = [sympy.Rational(c) for c in p.all_coeffs()]
    den = int(sympy.lcm([c.q for c in coeffs])) if coeffs else 1
    ints = [int(c * den) for c in coeffs]
    return IntPoly(list(reversed(ints))), den


def parse_poly(text: str) -> IntPoly:
    poly, den = _poly_from_sympy(_sympy_poly(text))
    if den != 1:
        raise ValueError(f'polynomial has non-integer coefficients: {text!r}')
    return poly


def _sympy_poly(text: str):
    expr = sympy.sympify(text.replace('^', '**'), rational=True)
    if expr.free_symbols - {_N}:
        raise ValueError(f'only the variable n is allowed: {text!r}')
    return sympy.Poly(expr, _N)


@dataclass(frozen=True)
class RationalFunc:
    """Reduced quotient num/den; den has positive leading coefficient."""
    num: IntPoly
    den: IntPoly = IntPoly((1,))

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDivisionError('rational function with zero denominator')
        if num.is_zero:
            object.__setattr__(self, 'num', IntPoly())
            object.__setattr__(self, 'den', IntPoly((1,)))
            return
        g = _poly_gcd(num, den)
        if g.degree > 0 or g.leading != 1:
            num = _poly_quo(num, g)
            den = _poly_quo(den, g)
        c = math.gcd(num.content, den.content)
        sign = -1 if den.leading < 0 else 1
        if c * sign != 1:
            num = IntPoly([x // (c * sign) for x in num.coeffs])
            den = IntPoly([x // (c * sign) for x in den.coeffs])
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def degree_diff(self) -> int:
        """deg(num) - deg(den); the growth exponent of f(n) for large n."""
        if self.is_zero:
            raise ValueError('zero rational function has no growth exponent')
        return self.num.degree - self.den.degree

    @property
    def leading_ratio(self) -> Fraction:
        return Fraction(self.num.leading, self.den.leading)

    def __call__(self, x) -> Fraction:
        den = self.den(x)
        if den == 0:
            raise ZeroDivisionError(f'pole at {x}')
        return Fraction(self.num(x), den)

    def shifted(self, k: int) -> 'RationalFunc':
        return RationalFunc(self.num.shifted(k), self.den.shifted(k))

    def __mul__(self, other) -> 'RationalFunc':
        if isinstance(other, RationalFunc):
            return RationalFunc(self.num * other.num, self.den * other.den)
        q = Fraction(other)
        return RationalFunc(self.num.scaled(q.numerator), self.den.scaled(q.denominator))

    def __add__(self, other) -> 'RationalFunc':
        if not isinstance(other, RationalFunc):
            q = Fraction(other)
            other = RationalFunc(IntPoly((q.numerator,)), IntPoly((q.denominator,)))
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def reciprocal(self) -> 'RationalFunc':
        if self.is_zero:
            raise ZeroDivisionError('reciprocal of the zero function')
        return RationalFunc(self.den, self.num)

    def to_text(self) -> str:
        return f'({self.num.to_text()})/({self.den.to_text()})'

    @classmethod
    def from_text(cls, text: str) -> 'RationalFunc':
        expr = sympy.together(sympy.sympify(text.replace('^', '**'), rational=True))
        if expr.free_symbols - {_N}:
            raise ValueError(f'only the variable n is allowed: {text!r}')
        num, den = sympy.fraction(expr)
        pn, dn = _poly_from_sympy(sympy.Poly(num, _N))
        pd, dd = _poly_from_sympy(sympy.Poly(den, _N))
        return cls(pn.scaled(dd), pd.scaled(dn))


def _poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    g = sympy.gcd(sympy.Poly(list(reversed(a.coeffs)), _N),
                  sympy.Poly(list(reversed(b.coeffs)), _N))
    poly, den = _poly_from_sympy(g)
    assert den == 1
    return poly


def _poly_quo(a: IntPoly, g: IntPoly) -> IntPoly:
    q, r = sympy.div(sympy.Poly(list(reversed(a.coeffs)), _N),
                     sympy.Poly(list(reversed(g.coeffs)), _N))
    if not r.is_zero:
        raise ArithmeticError('inexact polynomial division')
    poly, den = _poly_from_sympy(q)
    assert den == 1
    return poly
