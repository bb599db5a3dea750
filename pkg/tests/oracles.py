"""Independent reference implementations used to check the library.

Everything here evaluates with exact Fractions and straightforward recursion,
deliberately avoiding the production code paths (matrix products, binary
splitting, generator recursions).
"""
from fractions import Fraction
from math import comb
import random

from constrel.polynomials import IntPoly, RationalFunc


def nested_gcf(a_terms, b_terms) -> Fraction:
    """a0 + b1/(a1 + b2/(... + bn/an)) evaluated bottom-up.

    a_terms = [a0..an], b_terms = [b1..bn]; raises ZeroDivisionError on a
    degenerate tail, mirroring a convergent with q = 0.
    """
    acc = Fraction(a_terms[-1])
    for a, b in zip(reversed(a_terms[:-1]), reversed(b_terms)):
        acc = Fraction(a) + Fraction(b) / acc
    return acc


def nested_ctransform(f, depth: int, shift: int = 0) -> Fraction:
    a = [Fraction(1)] * (depth + 1)
    b = [f(i + shift) for i in range(1, depth + 1)]
    return nested_gcf(a, b)


def count_monomials(n: int, d: int, o: int) -> int:
    """Exponent-vector count by direct recursion on the variable count."""
    if n == 0:
        return 1
    return sum(count_monomials(n - 1, d - e, o) for e in range(min(o, d) + 1))


def monomial_closed_form(n: int, d: int) -> int:
    """Stars-and-bars count for the order-unlimited case o = d."""
    return comb(n + d, d)


def random_rational_func(rng: random.Random, max_deg: int = 2,
                         coeff_bound: int = 3) -> RationalFunc:
    while True:
        num = [rng.randint(-coeff_bound, coeff_bound)
               for _ in range(rng.randint(1, max_deg + 1))]
        den = [rng.randint(-coeff_bound, coeff_bound)
               for _ in range(rng.randint(1, max_deg + 1))]
        if any(num) and any(den):
            return RationalFunc(IntPoly(num), IntPoly(den))


def eliminate_shared(terms1: dict, terms2: dict, shared) -> dict:
    """Exact linear elimination: b*rel1 - a*rel2 over Fractions, normalized
    to integer coefficients with gcd 1 and positive leading entry."""
    a, b = terms1[shared], terms2[shared]
    combo = {}
    for key in set(terms1) | set(terms2):
        combo[key] = b * terms1.get(key, 0) - a * terms2.get(key, 0)
    combo.pop(shared)
    combo = {k: v for k, v in combo.items() if v}
    if not combo:
        return {}
    from math import gcd
    g = 0
    for v in combo.values():
        g = gcd(g, abs(v))
    first = sorted(combo)[0]
    sign = -1 if combo[first] < 0 else 1
    return {k: v // (g * sign) for k, v in combo.items()}
