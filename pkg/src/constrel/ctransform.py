"""Canonical continued fractions and their convergent-matrix evaluation.

The canonical form is the fraction 1 + f(1)/(1 + f(2)/(1 + ...)) generated by
a rational function f.  A depth-N truncation is read off the product

    [[1, a0], [0, 1]] * prod_{i=1..N} [[0, b_i], [1, a_i]]
    = [[p_{N-1}, p_N], [q_{N-1}, q_N]]

computed here over exact integers by binary splitting.  For rational terms the
step matrices are cleared of denominators, so the stored integers carry a
common positive scale factor; every p/q ratio is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath as mp

from .errors import CanonicalizationError, EvaluationError
from .numerics import Real, _raw, _ulp, _bound
from .polynomials import IntPoly, RationalFunc

SHIFT_CAP = 64  # safety bound on singularity-avoiding shifts
_LEAF = 16


@dataclass(frozen=True)
class CTransform:
    """f plus the shift applied so f(n + shift) is zero/pole free for n >= 1."""
    f: RationalFunc
    shift: int = 0

    def __post_init__(self):
        if self.f.is_zero:
            raise ValueError('the zero function generates no fraction')
        if self.shift < 0:
            raise ValueError('shift must be non-negative')
        bad = [r for r in self.f.num.integer_roots() + self.f.den.integer_roots()
               if r - self.shift >= 1]
        if bad:
            raise ValueError(
                f'f has a zero or pole at n = {min(bad)} (shift {self.shift}); '
                f'use shift_to_regular')

    def term(self, i: int) -> Fraction:
        return self.f(i + self.shift)

    def to_text(self) -> str:
        base = f'C[{self.f.to_text()}]'
        return base if self.shift == 0 else f'{base}@{self.shift}'

    @classmethod
    def from_text(cls, text: str) -> 'CTransform':
        """Parse C[...] notation; without an explicit @shift suffix the
        minimal singularity-avoiding shift is applied automatically."""
        m = re.fullmatch(r'\s*C\[(.+)\]\s*(?:@(\d+))?\s*', text, re.DOTALL)
        if not m:
            raise ValueError(f'not a C[...] expression: {text!r}')
        f = RationalFunc.from_text(m.group(1))
        if m.group(2) is None:
            return shift_to_regular(f)
        return cls(f, int(m.group(2)))

    def to_json(self) -> dict:
        return {'num': list(self.f.num.coeffs), 'den': list(self.f.den.coeffs),
                'shift': self.shift}

    @classmethod
    def from_json(cls, obj: dict) -> 'CTransform':
        return cls(RationalFunc(IntPoly(obj['num']), IntPoly(obj['den'])),
                   obj.get('shift', 0))


@dataclass(frozen=True)
class GCF:
    """a0 + b1/(a1 + b2/(a2 + ...)) with rational-function term sequences."""
    a: RationalFunc
    b: RationalFunc
    shift: int = 0


@dataclass(frozen=True)
class Convergents:
    """Scaled integer convergent matrix [[p_prev, p], [q_prev, q]] at `depth`.

    Entries share a positive integer factor (the product of cleared term
    denominators); no gcd reduction is applied, so the integers grow.
    """
    p_prev: int
    p: int
    q_prev: int
    q: int
    depth: int

    def ratio(self) -> Fraction:
        if self.q == 0:
            raise EvaluationError('degenerate convergent: q = 0')
        return Fraction(self.p, self.q)

    def ratio_prev(self) -> Fraction:
        if self.q_prev == 0:
            raise EvaluationError('degenerate convergent: q_prev = 0')
        return Fraction(self.p_prev, self.q_prev)


def _mat_mul(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _poly_mpz(p: IntPoly):
    return [gmpy2.mpz(c) for c in reversed(p.coeffs)] or [gmpy2.mpz(0)]


def _horner(cs, x):
    acc = cs[0]
    for c in cs[1:]:
        acc = acc * x + c
    return acc


def _block(bn, bd, an, ad, lo, hi):
    """prod over i in [lo, hi) of lcm-cleared [[0, b_i], [1, a_i]]."""
    if hi - lo <= _LEAF:
        M = (gmpy2.mpz(1), gmpy2.mpz(0), gmpy2.mpz(0), gmpy2.mpz(1))
        for i in range(lo, hi):
            x = gmpy2.mpz(i)
            bni, bdi = _horner(bn, x), _horner(bd, x)
            ani, adi = _horner(an, x), _horner(ad, x)
            # clear denominators: scale row matrix by bdi*adi
            M = _mat_mul(M, (0, bni * adi, bdi * adi, bdi * ani))
        return M
    mid = (lo + hi) // 2
    return _mat_mul(_block(bn, bd, an, ad, lo, mid), _block(bn, bd, an, ad, mid, hi))


def _gcf_convergents(a: RationalFunc, b: RationalFunc, depth: int, shift: int) -> Convergents:
    if depth < 1:
        raise ValueError('depth must be at least 1')
    ash, bsh = a.shifted(shift), b.shifted(shift)
    M = _block(_poly_mpz(bsh.num), _poly_mpz(bsh.den),
               _poly_mpz(ash.num), _poly_mpz(ash.den), 1, depth + 1)
    a0 = ash(0)
    # [[den(a0), num(a0)], [0, den(a0)]] * M, keeping integer entries
    A, B, C, D = M
    p_prev = a0.denominator * A + a0.numerator * C
    p = a0.denominator * B + a0.numerator * D
    return Convergents(int(p_prev), int(p), int(a0.denominator * C),
                       int(a0.denominator * D), depth)


_ONE = RationalFunc(IntPoly((1,)))


def convergents(ct: CTransform, depth: int) -> Convergents:
    """Exact convergent matrix of the canonical fraction (a_n = 1, b_n = f)."""
    return _gcf_convergents(_ONE, ct.f, depth, ct.shift)


def gcf_convergents(g: GCF, depth: int) -> Convergents:
    return _gcf_convergents(g.a, g.b, depth, g.shift)


def eval_to_depth(ct: CTransform, depth: int, prec_bits: int):
    """(approximation, error proxy) at `depth`.

    The proxy is the exact |p_N/q_N - p_{N-1}/q_{N-1}| gap between consecutive
    truncations, returned as a 64-bit magnitude; the approximation's err is
    the proxy plus the final rounding.
    """
    if depth < 2:
        raise ValueError('depth must be at least 2')
    cv = convergents(ct, depth)
    if cv.q == 0 or cv.q_prev == 0:
        raise EvaluationError('degenerate convergent (q = 0); try a larger shift')
    det = cv.p * cv.q_prev - cv.p_prev * cv.q
    with mp.workprec(64):
        proxy = abs(mp.mpf(det) / (mp.mpf(cv.q) * mp.mpf(cv.q_prev)))
    with mp.workprec(prec_bits):
        value = mp.mpf(cv.p) / mp.mpf(cv.q)
    err = _bound(lambda: proxy + 4 * _ulp(value, prec_bits))
    return _raw(value, prec_bits, err), proxy


def proxy_decimal_digits(proxy) -> int:
    """Error proxy reported as agreeing decimal digits, floor(-log10 proxy)."""
    if proxy == 0:
        raise ValueError('exact proxy has no finite digit count')
    with mp.workprec(64):
        return int(mp.floor(-mp.log10(proxy)))


def shift_to_regular(f: RationalFunc) -> CTransform:
    """Minimal shift s >= 0 with f(n+s) zero/pole free on the positive integers.

    The shifted fraction relates to the original by a Mobius map (it drops a
    finite head), so callers must not equate their limits.
    """
    if f.is_zero:
        raise ValueError('the zero function generates no fraction')
    roots = [r for r in f.num.integer_roots() + f.den.integer_roots() if r >= 1]
    s = max(roots) if roots else 0
    if s > SHIFT_CAP:
        raise CanonicalizationError(
            f'no admissible shift below {SHIFT_CAP} (needs {s})')
    return CTransform(f, s)


def equivalence_transform(g: GCF, c: RationalFunc) -> GCF:
    """Rescale term sequences: c0*GCF[a, b] = GCF[c_n a_n, c_{n-1} c_n b_n].

    Convergent ratios of the output equal c(0) times the input's at every
    depth, whether or not either side converges.
    """
    if c.is_zero:
        raise ValueError('rescaling sequence must be nonzero')
    bad = [r for r in c.num.integer_roots() + c.den.integer_roots()
           if r - g.shift >= 0]
    if bad:
        raise ValueError(f'rescaling sequence has a zero or pole at n = {min(bad)}')
    return GCF(g.a * c, g.b * c * c.shifted(-1), g.shift)


def canonicalize(g: GCF):
    """(CTransform, scale): the canonical fraction C[b_n/(a_{n-1} a_n)] with
    GCF = scale * C-transform limit, scale = a(0) of the (possibly shifted) GCF.

    If a_n has a zero or pole at some n >= 0, the fraction head is dropped by
    shifting until admissible (recorded in the result's shift); the returned
    scale applies to the shifted fraction.
    """
    if g.b.is_zero:
        raise CanonicalizationError('b is identically zero; the fraction is just a0')
    a_eff = g.a.shifted(g.shift)
    b_eff = g.b.shifted(g.shift)
    a_bad = [r for r in a_eff.num.integer_roots() + a_eff.den.integer_roots() if r >= 0]
    b_bad = [r for r in b_eff.num.integer_roots() + b_eff.den.integer_roots() if r >= 1]
    extra = max([r + 1 for r in a_bad] + [r for r in b_bad], default=0)
    if extra > SHIFT_CAP:
        raise CanonicalizationError(
            f'cannot canonicalize: term zeros/poles persist past shift {SHIFT_CAP}')
    f = b_eff * a_eff.shifted(-1).reciprocal() * a_eff.reciprocal()
    return CTransform(f, extra), a_eff(extra)
