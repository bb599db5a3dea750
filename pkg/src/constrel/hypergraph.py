"""Persistent hypergraph of constants (vertices) and relations (hyperedges).

The store is a directory of JSONL files, one canonical-JSON record per line,
with an in-memory index rebuilt on load.  Vertex identity is the SHA-256 of
the defining payload, so inserting the same constant twice is a no-op and a
clash of payloads under one id is a hard error.  A search log of already
processed (constant set, degree, order, precision) keys makes exact reruns
free; skip decisions combine it with edge subsumption.
"""
from __future__ import annotations

import datetime
import hashlib
import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .ctransform import CTransform
from .errors import StoreError
from .numerics import Real, precision_of, effective_error
from .polyrel import PolyRelation, relation_subsumes

CONSTANTS_FILE = 'constants.jsonl'
RELATIONS_FILE = 'relations.jsonl'
SEARCHLOG_FILE = 'searchlog.jsonl'

KINDS = ('explicit', 'ctransform')
PROVENANCES = ('literature', 'discovered', 'user')
NOVELTIES = ('known', 'new', 'unreviewed')


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')


@dataclass(frozen=True)
class ConstantRecord:
    kind: str
    decimal: Optional[str] = None
    ctransform: Optional[CTransform] = None
    name: Optional[str] = None
    tags: tuple = ()
    provenance: str = 'user'
    cached_decimal: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f'kind must be one of {KINDS}')
        if self.provenance not in PROVENANCES:
            raise ValueError(f'provenance must be one of {PROVENANCES}')
        defining = (self.decimal is not None, self.ctransform is not None)
        if self.kind == 'explicit' and defining != (True, False):
            raise ValueError('explicit constants carry exactly a decimal payload')
        if self.kind == 'ctransform' and not self.ctransform:
            raise ValueError('ctransform constants carry exactly a fraction payload')
        object.__setattr__(self, 'tags', tuple(self.tags))

    @property
    def id(self) -> str:
        if self.kind == 'explicit':
            payload = {'kind': 'explicit', 'decimal': self.decimal}
        else:
            payload = {'kind': 'ctransform', 'ctransform': self.ctransform.to_json()}
        return _sha(_canonical_json(payload))

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == 'ctransform':
            return self.ctransform.to_text()
        return self.decimal[:12] + ('...' if len(self.decimal) > 12 else '')

    def to_json(self) -> dict:
        obj = {'id': self.id, 'kind': self.kind, 'tags': list(self.tags),
               'provenance': self.provenance}
        if self.decimal is not None:
            obj['decimal'] = self.decimal
        if self.ctransform is not None:
            obj['ctransform'] = self.ctransform.to_json()
        if self.name:
            obj['name'] = self.name
        if self.cached_decimal:
            obj['cached_decimal'] = self.cached_decimal
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> 'ConstantRecord':
        ct = CTransform.from_json(obj['ctransform']) if 'ctransform' in obj else None
        return cls(obj['kind'], obj.get('decimal'), ct, obj.get('name'),
                   tuple(obj.get('tags', ())), obj.get('provenance', 'user'),
                   obj.get('cached_decimal'))


@dataclass(frozen=True)
class HyperEdge:
    relation: PolyRelation
    history: tuple = ()          # ((iso timestamp, precision_bits), ...)
    novelty: str = 'unreviewed'

    def __post_init__(self):
        if self.novelty not in NOVELTIES:
            raise ValueError(f'novelty must be one of {NOVELTIES}')
        hist = tuple((str(t), int(p)) for t, p in self.history)
        if not hist:
            hist = ((_now(), self.relation.precision_bits),)
        object.__setattr__(self, 'history', hist)

    @property
    def id(self) -> str:
        return _sha(self.relation.canonical_key())

    def to_json(self) -> dict:
        return {'id': self.id, 'relation': self.relation.to_json(),
                'history': [list(h) for h in self.history],
                'novelty': self.novelty}

    @classmethod
    def from_json(cls, obj: dict) -> 'HyperEdge':
        return cls(PolyRelation.from_json(obj['relation']),
                   tuple((h[0], int(h[1])) for h in obj['history']),
                   obj.get('novelty', 'unreviewed'))


def _set_key(constants: Iterable[str]) -> str:
    return _canonical_json(sorted(constants))


class Hypergraph:
    """In-memory hypergraph with JSONL persistence."""

    def __init__(self):
        self.constants: dict = {}
        self.edges: dict = {}
        self.searchlog: list = []   # (set_key, d, o, prec_bits)

    # -- vertices -------------------------------------------------------

    def add_constant(self, rec: ConstantRecord) -> str:
        cid = rec.id
        old = self.constants.get(cid)
        if old is None:
            self.constants[cid] = rec
            return cid
        if (old.kind, old.decimal, None if old.ctransform is None else old.ctransform.to_json()) != \
           (rec.kind, rec.decimal, None if rec.ctransform is None else rec.ctransform.to_json()):
            raise StoreError(f'payload clash under id {cid[:12]}')
        merged = replace(old,
                         tags=tuple(dict.fromkeys(old.tags + rec.tags)),
                         name=old.name or rec.name,
                         cached_decimal=_better_cache(old.cached_decimal, rec.cached_decimal))
        self.constants[cid] = merged
        return cid

    def cache_value(self, cid: str, decimal: str):
        rec = self.constants[cid]
        self.constants[cid] = replace(
            rec, cached_decimal=_better_cache(rec.cached_decimal, decimal))

    # -- edges ----------------------------------------------------------

    def add_relation(self, edge: HyperEdge) -> str:
        for cid in edge.relation.constants:
            if cid not in self.constants:
                raise StoreError(f'dangling constant reference {cid[:12]}')
        eid = edge.id
        old = self.edges.get(eid)
        if old is None:
            self.edges[eid] = edge
        else:
            novelty = old.novelty if old.novelty != 'unreviewed' else edge.novelty
            self.edges[eid] = replace(old, history=old.history + edge.history,
                                      novelty=novelty)
        return eid

    def should_skip(self, constants, d: int, o: int) -> bool:
        cs = set(constants)
        return any(relation_subsumes(e.relation, cs, d, o)
                   for e in self.edges.values())

    # -- search log (negative cache for exact reruns) --------------------

    def mark_searched(self, constants, d: int, o: int, prec_bits: int):
        self.searchlog.append((_set_key(constants), d, o, prec_bits))

    def was_searched(self, constants, d: int, o: int, prec_bits: int) -> bool:
        key = _set_key(constants)
        return any(k == key and dd >= d and oo >= o and pp >= prec_bits
                   for k, dd, oo, pp in self.searchlog)

    # -- composition ------------------------------------------------------

    def compose_linear(self, e1: HyperEdge, e2: HyperEdge, shared: str) -> HyperEdge:
        """Eliminate `shared` from two linear edges by cross-multiplication.

        Result precision is the lesser input precision minus the bit growth
        of the integer multipliers.
        """
        for e in (e1, e2):
            if e.relation.degree > 1 or e.relation.order > 1:
                raise StoreError('transitivity requires linear edges')
        a = _linear_coeff(e1.relation, shared)
        b = _linear_coeff(e2.relation, shared)
        if a == 0 or b == 0:
            raise StoreError(f'shared constant {shared[:12]} missing from an edge')
        terms: dict = {}
        for rel, mult in ((e1.relation, b), (e2.relation, -a)):
            for mono, c in zip(rel.monomials, rel.coeffs):
                if not c:
                    continue
                name = _mono_constant(rel.constants, mono)
                terms[name] = terms.get(name, 0) + mult * c
        terms.pop(shared, None)
        terms = {k: v for k, v in terms.items() if v}
        if not terms or all(k is None for k in terms):
            raise StoreError('degenerate composition: edges are proportional')
        consts = tuple(sorted(k for k in terms if k is not None))
        entries = [(tuple(0 for _ in consts), terms[None])] if None in terms else []
        for i, cid in enumerate(consts):
            mono = tuple(1 if j == i else 0 for j in range(len(consts)))
            entries.append((mono, terms[cid]))
        entries.sort(key=lambda mc: (sum(mc[0]), mc[0]))
        monos = tuple(m for m, _ in entries)
        coeffs = [c for _, c in entries]
        g = 0
        for c in coeffs:
            g = math.gcd(g, abs(c))
        sign = -1 if next(c for c in coeffs if c) < 0 else 1
        coeffs = tuple(c // (g * sign) for c in coeffs)
        growth = max(abs(a).bit_length(), abs(b).bit_length()) + 1
        precision = max(min(e1.relation.precision_bits, e2.relation.precision_bits)
                        - growth, 0)
        from .engine import _roi
        rel = PolyRelation(consts, monos, coeffs, 1, 1,
                           precision, _roi(coeffs, precision))
        return HyperEdge(rel.canonical(), ((_now(), precision),), 'unreviewed')

    # -- verification ------------------------------------------------------

    def reverify(self, resolve, factor: int = 2) -> list:
        """Recompute each edge's residual at `factor` times its stored
        precision; append to history.  `resolve(record, prec_bits) -> Real`.

        Returns (edge id, old precision, new precision) triples.
        """
        report = []
        for eid in sorted(self.edges):
            edge = self.edges[eid]
            rel = edge.relation
            old_p = edge.history[-1][1]
            target = factor * max(old_p, 64)
            values = {cid: resolve(self.constants[cid], target)
                      for cid in rel.constants}
            resid = rel.evaluate(values)
            err = effective_error(abs(resid).value, [v.err for v in values.values()])
            new_p = min(precision_of(err, prec_bits=target), target)
            self.edges[eid] = replace(edge, history=edge.history + ((_now(), new_p),))
            report.append((eid, old_p, new_p))
        return report

    # -- stats / export ---------------------------------------------------

    def stats(self) -> dict:
        degree_hist: dict = {}
        for e in self.edges.values():
            for cid in e.relation.constants:
                degree_hist[cid] = degree_hist.get(cid, 0) + 1
        dist: dict = {}
        for v in degree_hist.values():
            dist[v] = dist.get(v, 0) + 1
        return {'constants': len(self.constants),
                'relations': len(self.edges),
                'by_kind': {k: sum(1 for c in self.constants.values() if c.kind == k)
                            for k in KINDS},
                'by_novelty': {k: sum(1 for e in self.edges.values() if e.novelty == k)
                               for k in NOVELTIES},
                'vertex_degree_distribution': {str(k): dist[k] for k in sorted(dist)}}

    def export_dot(self) -> str:
        """Deterministic DOT rendering: solid edges for order 1, dashed for
        higher order; edges of arity != 2 hang off a small square junction."""
        lines = ['graph hypergraph {', '  node [shape=ellipse];']
        ordered = sorted(self.constants, key=lambda c: (self.constants[c].label, c))
        for cid in ordered:
            label = self.constants[cid].label.replace('"', "'")
            lines.append(f'  "{cid[:12]}" [label="{label}"];')
        for eid in sorted(self.edges):
            edge = self.edges[eid]
            style = 'solid' if edge.relation.order <= 1 else 'dashed'
            members = sorted(edge.relation.constants)
            if len(members) == 2:
                lines.append(f'  "{members[0][:12]}" -- "{members[1][:12]}" '
                             f'[style={style}];')
            else:
                junction = f'j_{eid[:12]}'
                lines.append(f'  "{junction}" [shape=square,label="",'
                             f'width=0.12,height=0.12];')
                for m in members:
                    lines.append(f'  "{junction}" -- "{m[:12]}" [style={style}];')
        lines.append('}')
        return '\n'.join(lines) + '\n'

    # -- persistence -------------------------------------------------------

    def save(self, directory: str):
        os.makedirs(directory, exist_ok=True)
        with open(os.path.join(directory, CONSTANTS_FILE), 'w') as fh:
            for cid in sorted(self.constants):
                fh.write(_canonical_json(self.constants[cid].to_json()) + '\n')
        with open(os.path.join(directory, RELATIONS_FILE), 'w') as fh:
            for eid in sorted(self.edges):
                fh.write(_canonical_json(self.edges[eid].to_json()) + '\n')
        with open(os.path.join(directory, SEARCHLOG_FILE), 'w') as fh:
            for key, d, o, p in self.searchlog:
                fh.write(_canonical_json({'set': key, 'd': d, 'o': o,
                                          'prec_bits': p}) + '\n')

    @classmethod
    def load(cls, directory: str) -> 'Hypergraph':
        store = cls()
        cpath = os.path.join(directory, CONSTANTS_FILE)
        if os.path.exists(cpath):
            with open(cpath) as fh:
                for line in fh:
                    if line.strip():
                        rec = ConstantRecord.from_json(json.loads(line))
                        store.constants[rec.id] = rec
        rpath = os.path.join(directory, RELATIONS_FILE)
        if os.path.exists(rpath):
            with open(rpath) as fh:
                for line in fh:
                    if line.strip():
                        edge = HyperEdge.from_json(json.loads(line))
                        store.edges[edge.id] = edge
        spath = os.path.join(directory, SEARCHLOG_FILE)
        if os.path.exists(spath):
            with open(spath) as fh:
                for line in fh:
                    if line.strip():
                        obj = json.loads(line)
                        store.searchlog.append((obj['set'], obj['d'], obj['o'],
                                                obj['prec_bits']))
        return store

    def names(self) -> dict:
        return {cid: rec.label for cid, rec in self.constants.items()}

    def find_by_name(self, name: str) -> Optional[str]:
        for cid, rec in self.constants.items():
            if rec.name == name:
                return cid
        return None


def _better_cache(old: Optional[str], new: Optional[str]) -> Optional[str]:
    if old is None:
        return new
    if new is None:
        return old
    return new if len(new) > len(old) else old


def _linear_coeff(rel: PolyRelation, cid: str) -> int:
    if cid not in rel.constants:
        return 0
    idx = rel.constants.index(cid)
    for mono, c in zip(rel.monomials, rel.coeffs):
        if mono[idx] == 1 and sum(mono) == 1:
            return c
    return 0


def _mono_constant(constants, mono) -> Optional[str]:
    """The single constant of a linear monomial, or None for the 1 monomial."""
    total = sum(mono)
    if total == 0:
        return None
    idx = next(i for i, e in enumerate(mono) if e)
    return constants[idx]
