"""Turning stored constant records into error-bounded values.

Explicit constants parse their decimal payload; fraction-defined constants are
classified, depth-planned for the requested precision, and evaluated.  The
evaluated decimal is cached back onto the record so repeated searches do not
re-evaluate deep fractions.
"""
from __future__ import annotations

import math

import mpmath as mp

from .convergence import classify, plan_depth
from .ctransform import eval_to_depth
from .errors import DivergentError, PrecisionError
from .hypergraph import ConstantRecord, Hypergraph
from .numerics import Real, precision_of

_LOG10_2 = math.log10(2)


def constant_value(rec: ConstantRecord, prec_bits: int) -> Real:
    """A Real for `rec` certified to about prec_bits (raises PrecisionError
    if the payload cannot support it)."""
    digits_needed = int(prec_bits * _LOG10_2) + 8
    source = rec.decimal if rec.kind == 'explicit' else rec.cached_decimal
    if source is not None and _digit_count(source) >= digits_needed:
        value = Real.from_decimal(source, prec_bits=prec_bits + 32)
        if precision_of(value.err) < prec_bits:
            raise PrecisionError(f'{rec.label}: cached digits too short')
        return value
    if rec.kind == 'explicit':
        raise PrecisionError(
            f'{rec.label}: decimal payload has fewer than {digits_needed} digits')
    return evaluate_ctransform(rec.ctransform, prec_bits)[0]


def evaluate_ctransform(ct, prec_bits: int, depth: int | None = None):
    """(Real, depth used) for a fraction at the requested precision.

    Without an explicit depth the convergence model plans one; since the
    model's big-O constants are taken as 1, the proxy is checked afterwards
    and the depth doubled until it certifies the target.  Fractions the model
    cannot plan (divergent/unknown/polynomial-rate) are rejected.
    """
    planned = depth is None
    if planned:
        cls = classify(ct.f)
        if not cls.converges:
            raise DivergentError(f'{ct.to_text()}: {cls.describe()}')
        target = int(prec_bits * _LOG10_2) + 8
        depth = plan_depth(cls, target)
        if depth is None:
            raise PrecisionError(
                f'{ct.to_text()}: no depth plan for {cls.describe()}')
        depth = max(depth, 2)
    for _ in range(7):
        value, proxy = eval_to_depth(ct, depth, prec_bits + 32)
        if proxy == 0 or precision_of(proxy) >= prec_bits:
            return value, depth
        if not planned:
            break
        depth *= 2
    raise PrecisionError(
        f'{ct.to_text()}: proxy at depth {depth} certifies only '
        f'{max(precision_of(proxy), 0)} of {prec_bits} bits')


def ensure_cached(store: Hypergraph, cid: str, prec_bits: int) -> Real:
    """constant_value with write-back of freshly evaluated digits."""
    rec = store.constants[cid]
    value = constant_value(rec, prec_bits)
    if rec.kind == 'ctransform':
        have = _digit_count(rec.cached_decimal) if rec.cached_decimal else 0
        digits = value.decimal_digits()
        if digits > have:
            store.cache_value(cid, value.decimal(digits))
    return value


def available_precision(rec: ConstantRecord) -> int:
    """Upper bound (bits) on the precision this record's payload can certify.

    Fraction-defined constants are limited only by how deep we are willing to
    evaluate, which is effectively unbounded for plannable regimes.
    """
    if rec.kind == 'explicit':
        # inverse of constant_value's digit requirement
        return max(int((_digit_count(rec.decimal) - 9) / _LOG10_2), 0)
    cls = classify(rec.ctransform.f)
    if not cls.converges or plan_depth(cls, 64) is None:
        return 0
    return 1 << 24


def _digit_count(text: str) -> int:
    return sum(ch.isdigit() for ch in text)
