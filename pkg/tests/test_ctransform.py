import random
from fractions import Fraction

import mpmath as mp
import pytest

from constrel.ctransform import (CTransform, GCF, canonicalize, convergents,
                                 equivalence_transform, eval_to_depth,
                                 gcf_convergents, proxy_decimal_digits,
                                 shift_to_regular)
from constrel.errors import CanonicalizationError, EvaluationError
from constrel.polynomials import IntPoly, RationalFunc

from oracles import nested_ctransform, nested_gcf, random_rational_func

ONE = RationalFunc(IntPoly((1,)))


def rf(text):
    return RationalFunc.from_text(text)


class TestConvergents:
    def test_depth_three_hand_expansion(self):
        # 1 + 1/(1 + (1/2)/(1 + (1/3)/1)) = 19/11
        cv = convergents(CTransform.from_text('C[(1)/(n)]'), 3)
        assert Fraction(cv.p, cv.q) == Fraction(19, 11)
        # depth 2: 1 + 1/(1 + (1/2)/1) = 5/3
        assert Fraction(cv.p_prev, cv.q_prev) == Fraction(5, 3)

    def test_matrix_equals_nested_oracle(self):
        rng = random.Random(7)
        checked = 0
        while checked < 40:
            f = random_rational_func(rng)
            try:
                ct = shift_to_regular(f)
            except CanonicalizationError:
                continue
            depth = rng.randint(2, 30)
            try:
                expect = nested_ctransform(ct.f, depth, ct.shift)
            except ZeroDivisionError:
                continue
            cv = convergents(ct, depth)
            if cv.q == 0:
                continue
            assert Fraction(cv.p, cv.q) == expect
            checked += 1

    def test_degenerate_convergent(self):
        # C[-1] truncations hit q = 0
        ct = CTransform.from_text('C[(-1)/(1)]')
        with pytest.raises(EvaluationError):
            eval_to_depth(ct, 2, 64)


class TestEval:
    def test_golden_ratio(self):
        ct = CTransform.from_text('C[(1)/(1)]')
        value, proxy = eval_to_depth(ct, 256, 256)
        with mp.workprec(300):
            assert abs(value.value - (1 + mp.sqrt(5)) / 2) < mp.mpf(2) ** -200
        assert proxy_decimal_digits(proxy) > 90

    @pytest.mark.parametrize('text', ['C[(1)/(n)]', 'C[(1)/(1)]', 'C[(n)/(1)]'])
    def test_proxy_monotone_in_depth(self, text):
        ct = CTransform.from_text(text)
        digits = [proxy_decimal_digits(eval_to_depth(ct, d, 512)[1])
                  for d in (8, 16, 32, 64, 128)]
        assert digits == sorted(digits)

    def test_err_covers_gap_to_limit(self):
        ct = CTransform.from_text('C[(1)/(n)]')
        value, _ = eval_to_depth(ct, 40, 256)
        with mp.workprec(400):
            gap = abs(value.value - (mp.e - 1))
        assert gap <= value.err * 2  # proxy is within a small factor of truth

    def test_depth_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            eval_to_depth(CTransform.from_text('C[(1)/(n)]'), 1, 64)


class TestShift:
    def test_pole_at_zero_only(self):
        assert shift_to_regular(rf('(1)/(n)')).shift == 0

    def test_numerator_root(self):
        ct = shift_to_regular(rf('(n-3)/(n)'))
        assert ct.shift == 3
        assert ct.f.shifted(ct.shift)(1) == Fraction(1, 4)

    def test_square_keeps_zero_shift(self):
        assert shift_to_regular(rf('(n^2)/(1)')).shift == 0

    def test_cap(self):
        with pytest.raises(CanonicalizationError):
            shift_to_regular(rf('(n-100)/(1)'))

    def test_from_text_applies_shift(self):
        ct = CTransform.from_text('C[(n-3)/(n)]')
        assert ct.shift == 3

    def test_invariant_rejects_bad_shift(self):
        with pytest.raises(ValueError):
            CTransform(rf('(n-3)/(n)'), 0)


class TestEquivalence:
    def test_identity(self):
        g = GCF(rf('(2)/(1)'), rf('(1)/(1)'))
        out = equivalence_transform(g, ONE)
        assert out.a == g.a and out.b == g.b

    def test_constant_half(self):
        g = GCF(rf('(2)/(1)'), rf('(1)/(1)'))
        out = equivalence_transform(g, rf('(1)/(2)'))
        assert out.a == ONE
        assert out.b == rf('(1)/(4)')

    def test_convergents_scale_by_c0(self):
        rng = random.Random(3)
        for _ in range(20):
            g = GCF(rf('(n+2)/(1)'), rf('(2*n+1)/(1)'))
            c = random_rational_func(rng, max_deg=1)
            try:
                out = equivalence_transform(g, c)
            except ValueError:
                continue
            c0 = c(0)
            for depth in (1, 4, 10):
                a = gcf_convergents(g, depth)
                b = gcf_convergents(out, depth)
                assert Fraction(b.p, b.q) == c0 * Fraction(a.p, a.q)

    def test_zero_sequence_rejected(self):
        g = GCF(rf('(2)/(1)'), rf('(1)/(1)'))
        with pytest.raises(ValueError):
            equivalence_transform(g, rf('(n-4)/(1)'))


class TestCanonicalize:
    def test_constant_two(self):
        ct, scale = canonicalize(GCF(rf('(2)/(1)'), rf('(1)/(1)')))
        assert ct.f == rf('(1)/(4)')
        assert scale == 2
        # 2 * C[1/4] = 1 + sqrt(2)
        value, _ = eval_to_depth(ct, 128, 128)
        with mp.workprec(160):
            assert abs(2 * value.value - (1 + mp.sqrt(2))) < mp.mpf(2) ** -100

    def test_identity_gcf(self):
        f = rf('(2*n+1)/(n+3)')
        ct, scale = canonicalize(GCF(ONE, f))
        assert ct.f == f and ct.shift == 0
        assert scale == 1

    def test_linear_a(self):
        ct, scale = canonicalize(GCF(rf('(n+1)/(1)'), ONE))
        assert ct.f == rf('(1)/(n^2+n)')
        assert scale == 1

    def test_agreement_with_gcf_at_all_depths(self):
        rng = random.Random(11)
        checked = 0
        while checked < 15:
            a = random_rational_func(rng, max_deg=1)
            b = random_rational_func(rng, max_deg=1)
            g = GCF(a, b)
            try:
                ct, scale = canonicalize(g)
            except CanonicalizationError:
                continue
            shifted = GCF(a.shifted(ct.shift), b.shifted(ct.shift))
            ok = True
            for depth in range(1, 50):
                gc = gcf_convergents(shifted, depth)
                cc = convergents(ct, depth)
                if gc.q == 0 or cc.q == 0:
                    ok = False
                    break
                assert Fraction(gc.p, gc.q) == scale * Fraction(cc.p, cc.q)
            if ok:
                checked += 1

    def test_shifts_past_a_zero(self):
        # a = n - 2 vanishes at n = 2; the head must be dropped
        ct, scale = canonicalize(GCF(rf('(n-2)/(1)'), ONE))
        assert ct.shift >= 3
        assert scale == Fraction(ct.shift - 2)

    def test_zero_b_rejected(self):
        with pytest.raises(CanonicalizationError):
            canonicalize(GCF(ONE, RationalFunc(IntPoly(()), IntPoly((1,)))))


class TestSerialization:
    def test_text_round_trip(self):
        ct = CTransform.from_text('C[(-2*n^4)/(9*n^4 - 3*n^2 + 1)]')
        assert CTransform.from_text(ct.to_text()) == ct

    def test_json_round_trip(self):
        ct = CTransform.from_text('C[(n-3)/(n)]')
        assert CTransform.from_json(ct.to_json()) == ct
        assert ct.to_json()['shift'] == 3
