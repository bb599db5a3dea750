"""Integer relation detection with return-on-investment scoring.

The engine runs PSLQ until its tolerance is met (step and coefficient limits
are disabled), then scores the find: RoI = certified precision over the bits
spent on coefficients.  Genuine relations earn far more precision than they
spend; junk hovers near 1, and the default significance cutoff is 2.
"""
import random

import mpmath as mp

from constrel import EngineConfig, Real, is_significant, lll_relation, pslq
from constrel.engine import experiment_table, roi_experiment

cfg = EngineConfig(prec_bits=1000)

with mp.workprec(1100):
    phi = (1 + mp.sqrt(5)) / 2
    xs = [Real(phi ** 2, 1050), Real(+phi, 1050), Real(mp.mpf(1), 1050)]
rel = pslq(xs, cfg)
print('phi is algebraic: coefficients', rel.coeffs, 'on [phi^2, phi, 1]')
print('  certified to', rel.precision_bits, 'bits; RoI =', float(rel.roi))
print('  significant?', is_significant(rel, cfg))

rel2 = lll_relation(xs, cfg)
print('LLL backend agrees:', rel2.coeffs)

rng = random.Random(1)
with mp.workprec(120):
    junk = [Real(mp.ldexp(mp.mpf(rng.getrandbits(100)), -100), 110)
            for _ in range(10)]
jcfg = EngineConfig(prec_bits=100)
jrel = pslq(junk, jcfg)
print('\nrandom inputs still produce a relation at tolerance:')
print('  coefficients', jrel.coeffs)
print('  RoI =', round(float(jrel.roi), 3), '-> significant?',
      is_significant(jrel, jcfg))

print('\nRoI statistics on random inputs (100 runs per n):')
rows = roi_experiment('pslq', [5, 10], 100, lambda n: 50 + 5 * n, seed=0)
print(experiment_table(rows))
print('means sit near 1.3 and no run approaches the cutoff of 2.')
