"""Arbitrary-precision reals with explicit working precision and error bounds.

A ``Real`` pairs an mpmath float with the binary precision it was computed at
and an upper bound on its absolute error.  Arithmetic propagates the bound by
first-order interval rules and charges one ulp of the result per operation for
rounding, so the bound stays a true bound for any chain of operations.

Error bounds are computed at 64 bits and inflated by a fixed relative slack,
which keeps them honest without directed rounding.
"""
from __future__ import annotations

import math
import sys
from fractions import Fraction

import mpmath as mp

try:
    # ten-thousand-digit decimal literals are routine here
    sys.set_int_max_str_digits(0)
except AttributeError:
    pass

# default working precisions: deep searches vs quick CLI evaluation (bits)
DEFAULT_SEARCH_PREC = 4000
DEFAULT_EVAL_PREC = 400

_BOUND_PREC = 64
_SLACK = None  # initialised lazily: 1 + 2**-40 at 64 bits


def _slack():
    global _SLACK
    if _SLACK is None:
        with mp.workprec(_BOUND_PREC):
            _SLACK = 1 + mp.mpf(2) ** -40
    return _SLACK


def _bound(fn):
    """Evaluate an error-bound formula at 64 bits and inflate it by the slack."""
    with mp.workprec(_BOUND_PREC):
        return +(fn() * _slack())


def _ulp(value: mp.mpf, prec_bits: int) -> mp.mpf:
    if value == 0:
        return mp.mpf(0)
    with mp.workprec(_BOUND_PREC):
        return mp.mpf(2) ** (mp.mag(value) - prec_bits)


def _exact_neg(x: mp.mpf) -> mp.mpf:
    # mpf unary ops round at the ambient precision; negation must not
    return mp.make_mpf(mp.libmp.mpf_neg(x._mpf_))


def _exact_abs(x: mp.mpf) -> mp.mpf:
    return mp.make_mpf(mp.libmp.mpf_abs(x._mpf_))


def _to_mpf(x, prec_bits: int):
    """(value, rounding_error_bound) at prec_bits."""
    with mp.workprec(prec_bits):
        if isinstance(x, mp.mpf):
            v = +x
        elif isinstance(x, Fraction):
            v = mp.mpf(x.numerator) / mp.mpf(x.denominator)
        elif isinstance(x, str):
            v = mp.mpf(x)
        else:
            v = mp.mpf(x)
    exact = (isinstance(x, int) and int(v) == x) or (isinstance(x, mp.mpf) and v == x)
    return v, (mp.mpf(0) if exact else _ulp(v, prec_bits))


class Real:
    """Immutable error-bounded real number."""

    __slots__ = ('value', 'prec_bits', 'err')

    def __init__(self, value, prec_bits: int = DEFAULT_EVAL_PREC, err=0):
        if prec_bits < 2:
            raise ValueError('prec_bits must be at least 2')
        v, round_err = _to_mpf(value, prec_bits)
        if not mp.isfinite(v):
            raise ValueError(f'non-finite value: {value!r}')
        e, _ = _to_mpf(err, _BOUND_PREC)
        if e < 0:
            raise ValueError('negative error bound')
        if round_err:
            e = _bound(lambda: e + round_err)
        object.__setattr__(self, 'value', v)
        object.__setattr__(self, 'prec_bits', int(prec_bits))
        object.__setattr__(self, 'err', e)

    def __setattr__(self, *_):
        raise AttributeError('Real is immutable')

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, value, prec_bits: int = DEFAULT_EVAL_PREC) -> 'Real':
        """Wrap a value that is exactly representable (int or dyadic mpf)."""
        r = cls(value, prec_bits)
        if r.err != 0:
            raise ValueError(f'{value!r} is not exactly representable at {prec_bits} bits')
        return r

    @classmethod
    def from_decimal(cls, text: str, prec_bits: int | None = None) -> 'Real':
        """Parse a decimal literal; err is one unit in the last given place.

        A literal of D significant digits gets err = 10**(lead_exponent + 1 - D),
        plus the binary rounding of the parse itself.
        """
        s = text.strip()
        digits, lead_exp = _significant_digits(s)
        if digits == 0:
            raise ValueError(f'no significant digits in {text!r}')
        if prec_bits is None:
            prec_bits = int(digits * math.log2(10)) + 32
        with mp.workprec(prec_bits + 8):
            v = mp.mpf(s)
        ulp_err = _ulp(v, prec_bits + 8)
        err = _bound(lambda: mp.mpf(10) ** (lead_exp + 1 - digits) + ulp_err)
        return cls(v, prec_bits, err)

    # -- arithmetic ----------------------------------------------------

    def _prec_with(self, other: 'Real') -> int:
        return min(self.prec_bits, other.prec_bits)

    def __add__(self, other) -> 'Real':
        other = _coerce(other, self.prec_bits)
        prec = self._prec_with(other)
        with mp.workprec(prec):
            v = self.value + other.value
        err = _bound(lambda: self.err + other.err + _ulp(v, prec))
        return _raw(v, prec, err)

    __radd__ = __add__

    def __neg__(self) -> 'Real':
        return _raw(_exact_neg(self.value), self.prec_bits, self.err)

    def __sub__(self, other) -> 'Real':
        return self + (-_coerce(other, self.prec_bits))

    def __rsub__(self, other) -> 'Real':
        return _coerce(other, self.prec_bits) - self

    def __mul__(self, other) -> 'Real':
        other = _coerce(other, self.prec_bits)
        prec = self._prec_with(other)
        with mp.workprec(prec):
            v = self.value * other.value
        a, b, ea, eb = abs(self.value), abs(other.value), self.err, other.err
        err = _bound(lambda: a * eb + b * ea + ea * eb + _ulp(v, prec))
        return _raw(v, prec, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'Real':
        other = _coerce(other, self.prec_bits)
        if abs(other.value) <= other.err:
            raise ZeroDivisionError('divisor indistinguishable from zero')
        prec = self._prec_with(other)
        with mp.workprec(prec):
            v = self.value / other.value
        err = _bound(lambda: (self.err + abs(v) * other.err)
                     / (abs(other.value) - other.err) + _ulp(v, prec))
        return _raw(v, prec, err)

    def __rtruediv__(self, other) -> 'Real':
        return _coerce(other, self.prec_bits) / self

    def __pow__(self, exponent: int) -> 'Real':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('only non-negative integer exponents')
        out = _raw(mp.mpf(1), self.prec_bits, mp.mpf(0))
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __abs__(self) -> 'Real':
        return _raw(_exact_abs(self.value), self.prec_bits, self.err)

    def sqrt(self) -> 'Real':
        if self.value - self.err <= 0:
            raise ValueError('sqrt of a value not certified positive')
        prec = self.prec_bits
        with mp.workprec(prec):
            v = mp.sqrt(self.value)
        err = _bound(lambda: self.err / (2 * mp.sqrt(self.value - self.err)) + _ulp(v, prec))
        return _raw(v, prec, err)

    # -- comparisons (by value; error-aware tests are explicit) --------

    def __eq__(self, other):
        return isinstance(other, Real) and self.value == other.value

    def __lt__(self, other):
        return self.value < _coerce(other, self.prec_bits).value

    def __le__(self, other):
        return self.value <= _coerce(other, self.prec_bits).value

    def __hash__(self):
        return hash(self.value)

    def indistinguishable(self, other: 'Real', slack: int = 4) -> bool:
        """|x - y| <= slack * (err_x + err_y)."""
        with mp.workprec(_BOUND_PREC):
            return abs(self.value - other.value) <= slack * (self.err + other.err)

    # -- display -------------------------------------------------------

    def decimal(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(self.decimal_digits(), 4)
        with mp.workprec(self.prec_bits + 16):
            return mp.nstr(self.value, digits, strip_zeros=False)

    def decimal_digits(self) -> int:
        """How many decimal digits of this value are certified by err."""
        if self.err == 0:
            return int(self.prec_bits * math.log10(2))
        with mp.workprec(_BOUND_PREC):
            d = -mp.log10(self.err)
        return max(int(mp.floor(d)), 0)

    def __repr__(self):
        with mp.workprec(64):
            v = mp.nstr(self.value, 12)
            e = 'exact' if self.err == 0 else f'err<{mp.nstr(self.err, 3)}'
        return f'Real({v}, {self.prec_bits} bits, {e})'


def _raw(value: mp.mpf, prec_bits: int, err: mp.mpf) -> Real:
    out = object.__new__(Real)
    object.__setattr__(out, 'value', value)
    object.__setattr__(out, 'prec_bits', prec_bits)
    object.__setattr__(out, 'err', err)
    return out


def _coerce(x, prec_bits: int) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, (int, Fraction)):
        v, round_err = _to_mpf(x, prec_bits)
        return _raw(v, prec_bits, round_err)
    raise TypeError(f'cannot mix Real with {type(x).__name__}')


def _significant_digits(s: str) -> tuple:
    """(count of significant digits, decimal exponent of the leading digit)."""
    body = s.lower().split('e')
    exp = int(body[1]) if len(body) == 2 else 0
    mant = body[0].lstrip('+-')
    if '.' in mant:
        int_part, frac_part = mant.split('.')
    else:
        int_part, frac_part = mant, ''
    digits = (int_part + frac_part).lstrip('0')
    if not digits:
        return 0, 0
    stripped_lead = len(int_part + frac_part) - len(digits)
    first_pos = len(int_part) - 1 - stripped_lead  # 10**first_pos place of leading digit
    return len(digits), first_pos + exp


def floor_neg_log2(eps) -> int:
    """Exact floor(-log2(eps)) for a positive mpf/int/Fraction magnitude."""
    if isinstance(eps, mp.mpf):
        sign, man, exp, bc = eps._mpf_
        if man == 0:
            raise ValueError('floor_neg_log2 of zero')
        man = int(man)
        pow2 = man & (man - 1) == 0
        return -(exp + bc - 1) if pow2 else -(exp + bc)
    q = Fraction(eps)
    if q <= 0:
        raise ValueError('floor_neg_log2 needs a positive value')
    p, r = q.numerator, q.denominator
    k = p.bit_length() - r.bit_length()  # 2**k <= q < 2**(k+2)
    if not (p << max(0, -k)) >= (r << max(0, k)):
        k -= 1
    exact = (p << max(0, -k)) == (r << max(0, k))
    return -k if exact else -(k + 1)


def precision_of(eps, prec_bits: int | None = None) -> int:
    """floor(-log2 eps); for an exact zero, the caller's working precision.

    ``prec_bits`` names the working precision to report for eps = 0; a Real
    argument supplies its own, and otherwise the ambient mpmath precision is
    used.
    """
    if isinstance(eps, Real):
        if prec_bits is None:
            prec_bits = eps.prec_bits
        eps = eps.value
    if eps == 0:
        return prec_bits if prec_bits is not None else mp.mp.prec
    return floor_neg_log2(abs(eps))


def effective_error(relation_residual, constant_errors):
    """max of the residual and every constant's own error bound."""
    worst = relation_residual
    for e in constant_errors:
        if _magnitude(e) > _magnitude(worst):
            worst = e
    return worst


def _magnitude(x):
    if isinstance(x, Real):
        return x.value
    return x
