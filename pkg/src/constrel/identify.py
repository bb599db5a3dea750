"""Numerical identification of constants against the hypergraph.

Decimal expansions and fraction expressions come in; the store is scanned for
outright value matches, then the relation engine is asked for polynomial
relations connecting the inputs to stored constants.  Small combinations are
tried at the cheap Mobius-like bounds (2, 1) first — most literature edges
live there — and the caller's bounds are used only if that stage comes up
empty.  Significant findings can be uploaded back into the store.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .convergence import classify
from .ctransform import CTransform
from .engine import EngineConfig
from .errors import ConstrelError, DivergentError, PrecisionError, TrivialInputError
from .hypergraph import ConstantRecord, Hypergraph, HyperEdge
from .numerics import Real, precision_of
from .polyrel import PolyRelation, find_poly_relation
from .values import available_precision, ensure_cached, evaluate_ctransform

MIN_INPUT_DIGITS = 20
DEFAULT_DIGIT_BUDGET = 200
DEFAULT_TAG = 'fundamental'


@dataclass(frozen=True)
class IdentifyRequest:
    inputs: tuple                     # decimal strings and/or C[...] texts
    use_store: bool = True
    candidate_tags: Optional[tuple] = None   # None = constants tagged DEFAULT_TAG
    d: int = 2
    o: int = 1
    auto_upload: bool = False
    digit_budget: int = DEFAULT_DIGIT_BUDGET
    reconfirm: bool = False

    def __post_init__(self):
        if not self.inputs:
            raise ValueError('at least one input required')
        object.__setattr__(self, 'inputs', tuple(self.inputs))
        if self.candidate_tags is not None:
            object.__setattr__(self, 'candidate_tags', tuple(self.candidate_tags))


@dataclass
class IdentifyResult:
    matches: list = field(default_factory=list)      # (input label, constant id)
    relations: list = field(default_factory=list)    # (PolyRelation, equation str)
    uploaded_constants: list = field(default_factory=list)
    uploaded_relations: list = field(default_factory=list)


def _parse_input(text: str, budget_digits: int):
    """(label, Real, CTransform or None) for one input string."""
    text = text.strip()
    if text.startswith('C['):
        ct = CTransform.from_text(text)
        cls = classify(ct.f)
        if not cls.converges:
            raise DivergentError(f'{ct.to_text()}: {cls.describe()}')
        prec_bits = int(budget_digits * 3.33) + 16
        value, _ = evaluate_ctransform(ct, prec_bits)
        return ct.to_text(), value, ct
    digits = sum(ch.isdigit() for ch in text)
    if digits < MIN_INPUT_DIGITS:
        raise ConstrelError(
            f'input {text[:24]!r} has {digits} significant digits; '
            f'at least {MIN_INPUT_DIGITS} are needed for a meaningful search')
    return text, Real.from_decimal(text), None


def identify(req: IdentifyRequest, store: Hypergraph) -> IdentifyResult:
    """Match the inputs against stored constants, then hunt for relations.

    Returns matches plus relations sorted by descending RoI; with
    auto_upload, unknown fractions become vertices and significant relations
    become edges.
    """
    budget = req.digit_budget * (10 if req.reconfirm else 1)
    parsed = [_parse_input(text, budget) for text in req.inputs]
    result = IdentifyResult()

    candidates = []
    if req.use_store:
        tags = req.candidate_tags if req.candidate_tags is not None else (DEFAULT_TAG,)
        for cid in sorted(store.constants):
            rec = store.constants[cid]
            if not set(tags).isdisjoint(rec.tags):
                candidates.append(cid)

    # working precision: what the weakest input's certified digits support
    certified = min(precision_of(v.err, prec_bits=v.prec_bits)
                    for _, v, _ in parsed)
    prec_bits = max(64, int(certified * 0.9))

    values = {}
    names = store.names()
    for label, value, _ in parsed:
        values[label] = value
        names.setdefault(label, label)
    stored_values = {}
    for cid in candidates:
        rec = store.constants[cid]
        usable = min(prec_bits, available_precision(rec))
        if usable < 64:
            continue
        try:
            stored_values[cid] = ensure_cached(store, cid, usable)
        except ConstrelError:
            continue

    # stage 1: outright value matches
    for label, value, _ in parsed:
        for cid, sval in stored_values.items():
            if value.indistinguishable(sval):
                result.matches.append((label, cid))

    # stage 2: relation search, Mobius-like pairs first
    found = _relation_stage(parsed, stored_values, values, prec_bits, 2, 1,
                            names, result)
    if not found and (req.d, req.o) != (2, 1):
        _relation_stage(parsed, stored_values, values, prec_bits, req.d, req.o,
                        names, result)

    result.relations.sort(key=lambda pr: pr[0].roi, reverse=True)

    if req.auto_upload:
        _upload(req, parsed, result, store)
    return result


def _relation_stage(parsed, stored_values, values, prec_cap, d, o, names,
                    result) -> bool:
    seen = {r.canonical_key() for r, _ in result.relations}
    combos = []
    labels = [label for label, _, _ in parsed]
    # each input against each stored constant ...
    for label in labels:
        for cid in stored_values:
            combos.append((label, cid))
    # ... inputs among themselves ...
    if len(labels) >= 2:
        combos.append(tuple(labels))
    # ... all inputs plus one stored constant, then input x stored pairs
    for cid in stored_values:
        combos.append(tuple(labels) + (cid,))
    for label in labels:
        for pair in itertools.combinations(sorted(stored_values), 2):
            combos.append((label,) + pair)

    pool = {**values, **stored_values}
    found = False
    for combo in combos:
        if len(set(combo)) < 2:
            continue
        certified = min(precision_of(pool[c].err, prec_bits=pool[c].prec_bits)
                        for c in combo)
        prec = min(prec_cap, max(64, int(certified * 0.9)))
        try:
            cfg = EngineConfig(prec_bits=prec, roi_cutoff=2)
            rel = find_poly_relation([(c, pool[c]) for c in combo], d, o, cfg)
        except (TrivialInputError, PrecisionError):
            continue
        if rel is None:
            continue
        key = rel.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        found = True
        result.relations.append((rel, rel.equation_str(names)))
    return found


def _upload(req, parsed, result, store: Hypergraph):
    label_to_id = {}
    for label, value, ct in parsed:
        if ct is None:
            continue
        rec = ConstantRecord('ctransform', ctransform=ct, provenance='user',
                             tags=('identify',),
                             cached_decimal=value.decimal(value.decimal_digits()))
        cid = rec.id
        fresh = cid not in store.constants
        store.add_constant(rec)
        label_to_id[label] = cid
        if fresh:
            result.uploaded_constants.append(cid)
    for rel, _ in result.relations:
        if any(c not in store.constants and c not in label_to_id
               for c in rel.constants):
            continue  # relations on raw decimal inputs are not uploadable
        renamed = PolyRelation(
            tuple(label_to_id.get(c, c) for c in rel.constants),
            rel.monomials, rel.coeffs, rel.degree, rel.order,
            rel.precision_bits, rel.roi).canonical()
        edge = HyperEdge(renamed, novelty='unreviewed')
        if edge.id not in store.edges:
            store.add_relation(edge)
            result.uploaded_relations.append(edge.id)
