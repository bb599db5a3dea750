"""Polynomial relations over sets of constants.

Linear relation detection is lifted to polynomials by enumerating all
monomials within a degree bound d and per-variable order bound o, evaluating
them on the constants' values (with error propagation), and handing the vector
to the relation engine.  Monomials are kept in ascending graded lexicographic
order (the constant monomial first), which fixes the serialization.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .engine import EngineConfig, RunDiagnostics, find_relation
from .errors import PrecisionError, TrivialInputError
from .numerics import Real


def enumerate_monomials(n: int, d: int, o: int) -> list:
    """All exponent tuples with total degree <= d and each exponent <= o,
    ascending graded lex, starting at the constant monomial."""
    if n < 1 or d < 1 or not 1 <= o <= d:
        raise ValueError('need n >= 1 and 1 <= o <= d')
    out = []

    def rec(prefix, budget):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(min(o, budget) + 1):
            rec(prefix + [e], budget - e)

    rec([], d)
    out.sort(key=lambda e: (sum(e), e))
    return out


@dataclass(frozen=True)
class PolyRelation:
    """Integer-coefficient polynomial vanishing on the named constants.

    constants are ids in a fixed order; monomials[i] is the exponent tuple of
    coeffs[i].  degree/order describe the nonzero support.  gcd of coeffs is
    1 and the first coefficient (in monomial order) is positive.
    """
    constants: tuple
    monomials: tuple
    coeffs: tuple
    degree: int
    order: int
    precision_bits: int
    roi: Fraction

    def __post_init__(self):
        if not self.coeffs or not any(self.coeffs):
            raise ValueError('empty relation')
        if len(self.monomials) != len(self.coeffs):
            raise ValueError('monomial/coefficient mismatch')

    def evaluate(self, values: dict) -> Real:
        """Residual sum(c * prod x**e) on Reals keyed by constant id."""
        xs = [values[c] for c in self.constants]
        total = None
        for mono, c in zip(self.monomials, self.coeffs):
            if not c:
                continue
            term = _monomial_value(xs, mono) * c
            total = term if total is None else total + term
        return total

    def support_degree_order(self):
        degs = [sum(m) for m, c in zip(self.monomials, self.coeffs) if c]
        ords = [max(m, default=0) for m, c in zip(self.monomials, self.coeffs) if c]
        return max(degs), max(ords)

    def canonical(self) -> 'PolyRelation':
        """Sorted-constant, zero-free, sign/gcd-normalized form (dedup key)."""
        perm = sorted(range(len(self.constants)), key=lambda i: self.constants[i])
        consts = tuple(self.constants[i] for i in perm)
        entries = {}
        for mono, c in zip(self.monomials, self.coeffs):
            if c:
                entries[tuple(mono[i] for i in perm)] = c
        # drop constants that no longer appear
        used = [i for i in range(len(consts)) if any(m[i] for m in entries)]
        consts2 = tuple(consts[i] for i in used)
        entries = {tuple(m[i] for i in used): c for m, c in entries.items()}
        monos = sorted(entries, key=lambda e: (sum(e), e))
        coeffs = [entries[m] for m in monos]
        g = 0
        for c in coeffs:
            g = math.gcd(g, abs(c))
        sign = -1 if coeffs[0] < 0 else 1
        coeffs = tuple(c // (g * sign) for c in coeffs)
        deg = max(sum(m) for m in monos)
        order = max(max(m, default=0) for m in monos)
        return PolyRelation(consts2, tuple(monos), coeffs, deg, order,
                            self.precision_bits, self.roi)

    def __str__(self):
        terms = []
        for mono, c in zip(self.monomials, self.coeffs):
            if not c:
                continue
            sign = '-' if c < 0 else '+'
            terms.append((sign, _term_str(abs(c), mono, self.constants, {})))
        first_sign, first = terms[0]
        body = ('-' if first_sign == '-' else '') + first
        for sign, term in terms[1:]:
            body += f' {sign} {term}'
        return f'{body} = 0'

    def equation_str(self, names: Optional[dict] = None) -> str:
        """Human-readable `lhs = rhs` with negative terms moved right."""
        names = names or {}
        pos, neg = [], []
        for mono, c in zip(self.monomials, self.coeffs):
            if not c:
                continue
            (pos if c > 0 else neg).append(_term_str(abs(c), mono, self.constants, names))
        lhs = ' + '.join(pos) or '0'
        rhs = ' + '.join(neg) or '0'
        return f'{lhs} = {rhs}'

    def to_json(self) -> dict:
        return {'constants': list(self.constants),
                'monomials': [list(m) for m in self.monomials],
                'coeffs': list(self.coeffs),
                'degree': self.degree, 'order': self.order,
                'precision_bits': self.precision_bits,
                'roi': str(self.roi)}

    @classmethod
    def from_json(cls, obj: dict) -> 'PolyRelation':
        return cls(tuple(obj['constants']),
                   tuple(tuple(m) for m in obj['monomials']),
                   tuple(int(c) for c in obj['coeffs']),
                   int(obj['degree']), int(obj['order']),
                   int(obj['precision_bits']), Fraction(obj['roi']))

    def canonical_key(self) -> str:
        c = self.canonical()
        return json.dumps({'constants': list(c.constants),
                           'monomials': [list(m) for m in c.monomials],
                           'coeffs': list(c.coeffs)},
                          sort_keys=True, separators=(',', ':'))


def _monomial_value(xs: Sequence[Real], mono) -> Real:
    out = None
    for x, e in zip(xs, mono):
        if e:
            p = x ** e
            out = p if out is None else out * p
    if out is None:
        return Real.exact(1, xs[0].prec_bits if xs else 64)
    return out


def _term_str(c, mono, constants, names) -> str:
    parts = [] if c == 1 and any(mono) else [str(c)]
    for cid, e in zip(constants, mono):
        if e:
            label = names.get(cid, cid if len(str(cid)) <= 12 else str(cid)[:12])
            parts.append(f'{label}' + (f'^{e}' if e > 1 else ''))
    return '*'.join(parts) if parts else str(c)


def find_poly_relation(values: Sequence, d: int, o: int,
                       cfg: EngineConfig,
                       diagnostics: Optional[RunDiagnostics] = None
                       ) -> Optional[PolyRelation]:
    """Search for one significant polynomial relation on (id, Real) pairs.

    Degenerate inputs (a value indistinguishable from zero or from another
    input within the tracked errors) are rejected up front; they would only
    manufacture junk relations.
    """
    values = list(values)
    if not values:
        raise ValueError('no values given')
    ids = [cid for cid, _ in values]
    if len(set(ids)) != len(ids):
        raise TrivialInputError('duplicate constant ids')
    xs = [x for _, x in values]
    zero = Real.exact(0, xs[0].prec_bits)
    for i, x in enumerate(xs):
        if x.indistinguishable(zero):
            raise TrivialInputError(f'trivial duplicate: {ids[i]} is zero within error')
        for j in range(i):
            if x.indistinguishable(xs[j]):
                raise TrivialInputError(
                    f'trivial duplicate: {ids[i]} equals {ids[j]} within error')

    monomials = enumerate_monomials(len(values), d, o)
    vector = []
    for mono in monomials:
        v = _monomial_value(xs, mono)
        if v.err != 0 and abs(v.value) <= v.err:
            raise PrecisionError('precision exhausted evaluating monomials')
        vector.append(v)

    rel = find_relation(vector, cfg, diagnostics)
    if rel is None:
        return None
    from .engine import is_significant
    if not is_significant(rel, cfg):
        return None
    return PolyRelation(tuple(ids), tuple(monomials), rel.coeffs,
                        d, o, rel.precision_bits, rel.roi).canonical()


def relation_subsumes(existing: PolyRelation, query_constants, d: int, o: int) -> bool:
    """True iff `existing` already covers a search over query_constants at
    bounds (d, o): its constants are a subset and its degree/order fit."""
    return (set(existing.constants) <= set(query_constants)
            and existing.degree <= d and existing.order <= o)
