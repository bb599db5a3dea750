import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from constrel.numerics import (Real, effective_error, floor_neg_log2,
                               precision_of)


class TestPrecisionOf:
    def test_quarter(self):
        assert precision_of(mp.mpf(0.25)) == 2

    def test_one(self):
        assert precision_of(mp.mpf(1)) == 0

    def test_fraction_case(self):
        # 1.5 * 2**-100: floor(-log2) = 99, checked in exact rationals
        eps = Fraction(3, 2) / Fraction(2) ** 100
        assert floor_neg_log2(eps) == 99
        with mp.workprec(120):
            assert precision_of(mp.mpf(3) * mp.mpf(2) ** -101) == 99

    def test_zero_uses_working_precision(self):
        assert precision_of(0, prec_bits=400) == 400
        assert precision_of(Real.exact(0, 300)) == 300

    @given(st.fractions(min_value=Fraction(1, 10 ** 12), max_value=Fraction(10 ** 12)))
    def test_exact_floor(self, q):
        k = floor_neg_log2(q)
        assert Fraction(2) ** -(k + 1) < q <= Fraction(2) ** -k or \
            q == Fraction(2) ** -k

    @given(st.integers(min_value=1, max_value=10 ** 9),
           st.integers(min_value=1, max_value=10 ** 9))
    def test_monotone(self, a, b):
        small, large = sorted([Fraction(a, 10 ** 9), Fraction(b, 10 ** 9)])
        assert precision_of(small) >= precision_of(large)


class TestEffectiveError:
    def test_max_of_all(self):
        r = effective_error(Fraction(1, 2 ** 200),
                            [Fraction(1, 2 ** 100), Fraction(1, 2 ** 300)])
        assert r == Fraction(1, 2 ** 100)

    def test_empty_list(self):
        assert effective_error(Fraction(1, 2 ** 50), []) == Fraction(1, 2 ** 50)

    def test_exact_inputs(self):
        assert effective_error(0, [0, 0]) == 0


class TestParsing:
    def test_unit_in_last_place(self):
        r = Real.from_decimal('3.14159')
        assert float(r.err) == pytest.approx(1e-5, rel=1e-3)

    def test_err_bounds_parse_gap(self):
        for text in ('3.14159', '0.5', '123.45', '1e-3', '2.718281828459045e2'):
            r = Real.from_decimal(text)
            with mp.workprec(200):
                gap = abs(r.value - mp.mpf(text))
            assert gap <= r.err

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Real.from_decimal('0.000')


def _random_chain(seed: int, ops: int):
    """Mirror a random arithmetic chain on Reals and exact Fractions."""
    rng = random.Random(seed)
    frac = Fraction(rng.randint(1, 9))
    real = Real(frac, 128)
    for _ in range(ops):
        op = rng.choice('+-*/s')
        arg = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        other = Real(arg, 128)
        if op == '+':
            real, frac = real + other, frac + arg
        elif op == '-':
            real, frac = real - other, frac - arg
        elif op == '*':
            real, frac = real * other, frac * arg
        elif op == '/':
            real, frac = real / other, frac / arg
        else:  # square instead of sqrt to stay in the rationals
            if abs(frac) < 10 ** 9:
                real, frac = real * real, frac * frac
    return real, frac


class TestErrorTracking:
    @pytest.mark.parametrize('seed', range(30))
    def test_err_bounds_true_error_over_chain(self, seed):
        real, frac = _random_chain(seed, ops=100)
        with mp.workprec(600):
            true = abs(real.value - mp.mpf(frac.numerator) / frac.denominator)
        assert true <= real.err

    def test_err_nonnegative_and_within_working_precision(self):
        r = Real.from_decimal('1.2345678901234567890')
        s = (r * r + r) / (r - 1)
        assert s.err >= 0
        assert precision_of(s.err) <= s.prec_bits

    def test_division_by_unresolved_zero(self):
        tiny = Real('1e-40', 64)  # err after parsing exceeds the value
        one = Real(1, 64)
        with pytest.raises(ZeroDivisionError):
            one / (tiny - tiny)

    def test_sqrt_err(self):
        r = Real.from_decimal('2.0000000000000000000')
        s = r.sqrt()
        with mp.workprec(200):
            assert abs(s.value - mp.sqrt(2)) <= s.err + mp.mpf(2) ** -60

    def test_pow(self):
        r = Real(Fraction(3, 7), 200)
        p = r ** 5
        with mp.workprec(250):
            exact = mp.mpf(3 ** 5) / 7 ** 5
            assert abs(p.value - exact) <= p.err


class TestImmutability:
    def test_set_raises(self):
        r = Real(1, 64)
        with pytest.raises(AttributeError):
            r.value = None
