"""Bundled constants and regression fixtures.

Sixteen fundamental constants ship as 10000-digit decimal files (generated by
tools/generate_seed_digits.py with cross-checked formulas), together with a
sample of literature relations used as regression fixtures.  Seeding a store
adds the constants, evaluates every fixture's fractions, verifies each
relation numerically and commits it as an edge.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .ctransform import CTransform
from .engine import _roi
from .errors import ConstrelError
from .hypergraph import ConstantRecord, HyperEdge, Hypergraph
from .numerics import precision_of, effective_error
from .polyrel import PolyRelation
from .values import constant_value, ensure_cached

SEED_NAMES = {
    'pi': 'pi', 'e': 'e', 'phi': 'phi', 'sqrt2': 'sqrt(2)', 'sqrt3': 'sqrt(3)',
    'catalan': 'G', 'zeta2': 'zeta(2)', 'zeta3': 'zeta(3)', 'zeta5': 'zeta(5)',
    'ln2': 'ln(2)', 'cf_const': 'C1', 'c2': 'C2',
    'lemniscate_a': 'A', 'lemniscate_b': 'B', 'pi_e': 'pi*e', 'r2': 'R2',
}


def seed_digits(name: str) -> str:
    path = resources.files('constrel.data') / 'digits' / f'{name}.txt'
    return path.read_text().strip()


def seed_constants() -> list:
    """The bundled fundamental constants as (unsaved) records."""
    out = []
    for name, label in SEED_NAMES.items():
        out.append(ConstantRecord('explicit', decimal=seed_digits(name),
                                  name=name, tags=('fundamental',),
                                  provenance='literature'))
    return out


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    novelty: str
    constants: tuple      # ConstantRecord per slot
    monomials: tuple
    coeffs: tuple

    def relation(self, precision_bits: int, roi) -> PolyRelation:
        return PolyRelation(tuple(rec.id for rec in self.constants),
                            self.monomials, self.coeffs,
                            max(sum(m) for m in self.monomials),
                            max(max(m) for m in self.monomials),
                            precision_bits, roi).canonical()


def fixture_specs() -> list:
    raw = json.loads((resources.files('constrel.data') / 'fixtures.json').read_text())
    seeds = {rec.name: rec for rec in seed_constants()}
    out = []
    for obj in raw:
        consts = []
        for entry in obj['constants']:
            if 'ref' in entry:
                consts.append(seeds[entry['ref']])
            else:
                ct = CTransform.from_text(entry['ctransform'])
                consts.append(ConstantRecord('ctransform', ctransform=ct,
                                             tags=('fixture',),
                                             provenance='literature'))
        out.append(FixtureSpec(obj['name'], obj['novelty'], tuple(consts),
                               tuple(tuple(m) for m in obj['monomials']),
                               tuple(obj['coeffs'])))
    return out


def verify_fixture(spec: FixtureSpec, prec_bits: int = 1024) -> PolyRelation:
    """Evaluate the fixture's constants and measure the relation's precision
    at prec_bits; raises if the relation fails to verify at all."""
    values = {}
    for rec in spec.constants:
        values[rec.id] = constant_value(rec, prec_bits)
    rel = spec.relation(0, 0)
    resid = rel.evaluate(values)
    err = effective_error(abs(resid).value, [v.err for v in values.values()])
    precision = min(precision_of(err, prec_bits=prec_bits), prec_bits)
    if precision < prec_bits // 4:
        raise ConstrelError(
            f'fixture {spec.name} verifies to only {precision} of {prec_bits} bits')
    return PolyRelation(rel.constants, rel.monomials, rel.coeffs, rel.degree,
                        rel.order, precision, _roi(rel.coeffs, precision))


def seed_store(store: Hypergraph, prec_bits: int = 1024,
               with_relations: bool = True) -> dict:
    """Populate a store with the bundle; returns counts."""
    added_c = 0
    for rec in seed_constants():
        before = len(store.constants)
        store.add_constant(rec)
        added_c += len(store.constants) - before
    added_e = 0
    if with_relations:
        for spec in fixture_specs():
            for rec in spec.constants:
                before = len(store.constants)
                store.add_constant(rec)
                added_c += len(store.constants) - before
            rel = verify_fixture(spec, prec_bits)
            for cid in rel.constants:
                ensure_cached(store, cid, prec_bits)
            before = len(store.edges)
            store.add_relation(HyperEdge(rel, novelty=spec.novelty))
            added_e += len(store.edges) - before
    return {'constants_added': added_c, 'relations_added': added_e}
