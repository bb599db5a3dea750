from fractions import Fraction

import pytest

from constrel.convergence import (ConvergenceClass, Regime, classify,
                                  plan_depth, predict_error_digits)
from constrel.polynomials import RationalFunc


def rf(text):
    return RationalFunc.from_text(text)


class TestClassify:
    def test_factorial(self):
        cls = classify(rf('(1)/(n)'))
        assert cls.kind is Regime.FACTORIAL and cls.k == -1

    def test_exponential_constant_one(self):
        cls = classify(rf('(1)/(1)'))
        assert cls.kind is Regime.EXPONENTIAL and cls.C == 5

    def test_subexponential_linear(self):
        cls = classify(rf('(n)/(1)'))
        assert cls.kind is Regime.SUBEXPONENTIAL
        assert (cls.C, cls.k) == (4, 1)

    def test_polynomial_squared(self):
        cls = classify(rf('(n^2)/(1)'))
        assert cls.kind is Regime.POLYNOMIAL and cls.k == 2

    def test_polynomial_from_vanishing_leading_term(self):
        # f -> -1/4 makes 1 + 4f shrink like 1/n
        cls = classify(rf('(-n)/(4*n + 4)'))
        assert cls.kind is Regime.POLYNOMIAL and cls.k == -1

    def test_divergent_cubic(self):
        assert classify(rf('(n^3)/(1)')).kind is Regime.DIVERGENT

    def test_unknown_negative_limit(self):
        assert classify(rf('(-1)/(1)')).kind is Regime.UNKNOWN

    def test_unknown_negative_linear(self):
        assert classify(rf('(-n)/(1)')).kind is Regime.UNKNOWN

    def test_ln_family(self):
        for k in (2, 5, 7):
            cls = classify(rf(f'(n^2)/({k * k}*(1 - 4*n^2))'))
            assert cls.kind is Regime.EXPONENTIAL
            assert cls.C == 1 - Fraction(1, k * k)

    def test_scaling_invariance(self):
        a = classify(rf('(-2*n^4)/(9*n^4 - 3*n^2 + 1)'))
        b = classify(rf('(-14*n^4)/(63*n^4 - 21*n^2 + 7)'))
        assert a == b

    def test_params_validated(self):
        with pytest.raises(ValueError):
            ConvergenceClass(Regime.FACTORIAL)
        with pytest.raises(ValueError):
            ConvergenceClass(Regime.DIVERGENT, C=Fraction(1))


class TestPredict:
    def test_factorial_at_depth_1024(self):
        cls = ConvergenceClass(Regime.FACTORIAL, k=Fraction(-1))
        # log10(1024!) = 2639.73...; accept either rounding convention
        assert predict_error_digits(cls, 1024) in (2639, 2640)

    def test_exponential_at_depth_1024(self):
        cls = ConvergenceClass(Regime.EXPONENTIAL, C=Fraction(5))
        assert predict_error_digits(cls, 1024) == 428

    def test_subexponential_at_depth_1024(self):
        cls = ConvergenceClass(Regime.SUBEXPONENTIAL, C=Fraction(4), k=Fraction(1))
        assert predict_error_digits(cls, 1024) == 27

    def test_no_model_cases(self):
        assert predict_error_digits(ConvergenceClass(Regime.POLYNOMIAL,
                                                     k=Fraction(2)), 100) is None
        assert predict_error_digits(ConvergenceClass(Regime.DIVERGENT), 100) is None
        assert predict_error_digits(ConvergenceClass(Regime.UNKNOWN), 100) is None


class TestPlanDepth:
    def test_exponential_round_trip_at_428_digits(self):
        cls = ConvergenceClass(Regime.EXPONENTIAL, C=Fraction(5))
        assert abs(plan_depth(cls, 428) - 1024) <= 1

    def test_factorial_single_digit(self):
        cls = ConvergenceClass(Regime.FACTORIAL, k=Fraction(-1))
        assert plan_depth(cls, 1) <= 5

    def test_unplannable(self):
        assert plan_depth(ConvergenceClass(Regime.POLYNOMIAL, k=Fraction(2)), 50) is None

    @pytest.mark.parametrize('target', [1, 7, 50, 423, 2000])
    def test_round_trip_property(self, target):
        for cls in (ConvergenceClass(Regime.FACTORIAL, k=Fraction(-2)),
                    ConvergenceClass(Regime.EXPONENTIAL, C=Fraction(3, 4)),
                    ConvergenceClass(Regime.SUBEXPONENTIAL, C=Fraction(4), k=Fraction(1))):
            depth = plan_depth(cls, target)
            assert predict_error_digits(cls, depth) >= target
            if depth > 1:
                assert predict_error_digits(cls, depth - 1) < target
