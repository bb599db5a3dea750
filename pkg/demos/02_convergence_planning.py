"""Convergence classification: know the cost before evaluating.

The regime of C[f] follows from the asymptotics of f and of 1 + 4f; with a
regime in hand the library predicts the error at any depth and plans the
depth for a requested number of digits.
"""
from constrel import CTransform, classify, plan_depth, predict_error_digits
from constrel.polynomials import RationalFunc

examples = [
    ('(1)/(n)', 'vanishing terms: factorial-like convergence'),
    ('(1)/(1)', 'constant terms: exponential convergence'),
    ('(n)/(1)', 'linear growth: sub-exponential convergence'),
    ('(n^2)/(1)', 'quadratic growth: polynomial rate, unknown exponent'),
    ('(n^3)/(1)', 'cubic growth: no convergence expected'),
    ('(-n)/(4*n + 4)', 'terms heading to -1/4: polynomial rate'),
]
for text, story in examples:
    cls = classify(RationalFunc.from_text(text))
    pred = predict_error_digits(cls, 1024)
    print(f'C[{text}]: {cls.describe()}')
    print(f'   {story}; predicted digits at depth 1024: {pred}')

print('\nPlanning: how deep for 500 digits of C[1]?')
cls = classify(RationalFunc.from_text('(1)/(1)'))
depth = plan_depth(cls, 500)
print(f'   plan_depth -> {depth} (predicts {predict_error_digits(cls, depth)} digits)')

print('\nHow deep for 50 digits of the slowly convergent C[n]?')
cls = classify(RationalFunc.from_text('(n)/(1)'))
depth = plan_depth(cls, 50)
print(f'   plan_depth -> {depth}')
