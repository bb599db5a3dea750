"""Evaluating canonical continued fractions to arbitrary precision.

The canonical form is C[f] = 1 + f(1)/(1 + f(2)/(1 + ...)).  Truncations are
read off an exact integer matrix product, so millions of levels are cheap and
the reported digits are trustworthy.
"""
import mpmath as mp

from constrel import CTransform, eval_to_depth
from constrel.ctransform import proxy_decimal_digits

# C[1/n] converges to e - 1 factorially fast: ~2644 digits by depth 1024
ct = CTransform.from_text('C[(1)/(n)]')
value, proxy = eval_to_depth(ct, depth=1024, prec_bits=9200)
print('C[1/n] at depth 1024')
print('  value      =', value.decimal(40), '...')
print('  proxy says ', proxy_decimal_digits(proxy), 'digits agree with depth 1023')
with mp.workprec(9300):
    true = abs(value.value - (mp.e - 1))
print('  truth:     ', int(mp.floor(-mp.log10(true))), 'digits agree with e - 1')

# C[1] is the golden ratio, one digit per ~3.3 levels
value, proxy = eval_to_depth(CTransform.from_text('C[(1)/(1)]'), 1024, 1600)
print('\nC[1] at depth 1024')
print('  value =', value.decimal(30), '...  (the golden ratio)')
print('  proxy =', proxy_decimal_digits(proxy), 'digits')

# a slowly converging fraction: depth 2**20 still only pins 5 digits
value, proxy = eval_to_depth(CTransform.from_text('C[(n^2)/(1)]'), 1 << 20, 256)
print('\nC[n^2] at depth 2**20')
print('  value =', value.decimal(7), '  proxy =', proxy_decimal_digits(proxy), 'digits')

# fractions with zeros or poles on the positive integers are shifted
# automatically; the shifted fraction relates to the original by a Mobius map
shifted = CTransform.from_text('C[(n - 3)/(n)]')
print('\nC[(n-3)/n] needs a head shift:', shifted.to_text())
